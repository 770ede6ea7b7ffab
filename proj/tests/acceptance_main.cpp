// Acceptance suite: one criterion per function, one PASS/FAIL line each.
// Usage: acceptance_tests <path-to-mp2d-binary>

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <httplib.h>
#include <json.hpp>

#include "mp2d/assembler.hpp"
#include "mp2d/errors.hpp"
#include "mp2d/eval.hpp"
#include "mp2d/kg.hpp"
#include "mp2d/pipeline.hpp"
#include "mp2d/postproc.hpp"
#include "mp2d/qgen.hpp"
#include "mp2d/retrieval.hpp"
#include "oracles.hpp"

using namespace mp2d;
using Clock = std::chrono::steady_clock;

namespace {

const std::string kFixtures = MP2D_FIXTURES_DIR;
std::string g_binary;
std::vector<std::string> g_failures;

void expect(bool ok, const std::string& detail) {
    if (!ok) g_failures.push_back(detail);
}

bool run_criterion(int number, const std::string& title,
                   const std::function<void()>& body) {
    g_failures.clear();
    try {
        body();
    } catch (const std::exception& e) {
        g_failures.push_back(std::string("exception: ") + e.what());
    }
    const bool ok = g_failures.empty();
    std::printf("[%s] criterion %d: %s\n", ok ? "PASS" : "FAIL", number, title.c_str());
    for (const auto& failure : g_failures) {
        std::printf("       - %s\n", failure.c_str());
    }
    return ok;
}

std::string read_all(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

int run_command(const std::string& command) {
    FILE* pipe = popen((command + " 2>/dev/null").c_str(), "r");
    if (!pipe) return -1;
    char buffer[512];
    while (fgets(buffer, sizeof(buffer), pipe) != nullptr) {
    }
    return pclose(pipe);
}

std::string temp_file(const std::string& name) {
    return (std::filesystem::temp_directory_path() / name).string();
}

// ---- criterion 1: end-to-end golden through the CLI ----

void criterion_golden() {
    const std::string golden_path = kFixtures + "/golden_seed42_n5.jsonl";
    const std::string golden = read_all(golden_path);
    expect(!golden.empty(), "golden file missing: " + golden_path);

    const auto generate = [&](int concurrency, const std::string& out) {
        const std::string command = "'" + g_binary + "' generate --graph '" + kFixtures +
                                    "/graph.jsonl' --corpus '" + kFixtures +
                                    "/corpus.jsonl' --out '" + out +
                                    "' --n 5 --seed 42 --generator STUB --concurrency " +
                                    std::to_string(concurrency);
        return run_command(command);
    };

    const std::string serial_out = temp_file("mp2d_acc_serial.jsonl");
    const auto start = Clock::now();
    const int status = generate(1, serial_out);
    const double elapsed =
        std::chrono::duration<double>(Clock::now() - start).count();
    expect(status == 0, "generate exited with status " + std::to_string(status));
    expect(elapsed < 1.0, "generation took " + std::to_string(elapsed) + " s (limit 1 s)");

    const std::string serial = read_all(serial_out);
    expect(serial == golden, "concurrency-1 output differs from the frozen golden file");

    const std::string parallel_out = temp_file("mp2d_acc_parallel.jsonl");
    expect(generate(4, parallel_out) == 0, "concurrency-4 generate failed");
    expect(read_all(parallel_out) == serial, "concurrency-4 output differs from concurrency-1");
}

// ---- criterion 2: structural invariants on randomized dialogues ----

class VectorRetriever : public Retriever {
public:
    explicit VectorRetriever(std::map<std::string, std::vector<std::string>> texts)
        : texts_(std::move(texts)) {}
    Passage retrieve(const std::string& query) override {
        const auto it = texts_.find(query);
        if (it == texts_.end()) throw NotFoundError(query);
        return Passage{query, it->second};
    }

private:
    std::map<std::string, std::vector<std::string>> texts_;
};

void criterion_structure() {
    Rng meta(20240517);
    StubGenerator stub;
    int produced = 0;
    while (produced < 200) {
        // Random connected-ish graph over up to 8 entities plus a corpus
        // with known per-entity sentence counts.
        const int n_entities = 2 + static_cast<int>(meta.uniform_below(7));
        KnowledgeGraph graph;
        std::set<std::pair<int, int>> used;
        const int edges = 1 + static_cast<int>(meta.uniform_below(14));
        for (int e = 0; e < edges; ++e) {
            const int s = static_cast<int>(meta.uniform_below(n_entities));
            const int o = static_cast<int>(meta.uniform_below(n_entities));
            if (s == o || used.count({s, o})) continue;
            used.insert({s, o});
            graph.add(Triplet{"E" + std::to_string(s), "r", "E" + std::to_string(o),
                              "Entity " + std::to_string(s) + " links to entity " +
                                  std::to_string(o) + "."});
        }
        if (graph.empty()) continue;

        std::map<std::string, std::vector<std::string>> corpus;
        std::map<std::string, std::size_t> m_of;
        for (int i = 0; i < n_entities; ++i) {
            const std::string entity = "E" + std::to_string(i);
            const std::size_t m = 1 + meta.uniform_below(12);
            m_of[entity] = m;
            for (std::size_t s = 0; s < m; ++s) {
                corpus[entity].push_back("Entity " + std::to_string(i) + " fact " +
                                         std::to_string(s) + ".");
            }
        }
        VectorRetriever retriever(corpus);

        Rng rng(meta.next_u64());
        const int max_topics = 2 + static_cast<int>(meta.uniform_below(4));
        const Walk walk = sample_walk(graph, rng, max_topics);
        const MultiPassage mp = build_multipassage(walk, retriever, rng);
        const RawDialogue raw = dialogue_from_multipassage(mp, stub);
        const Dialogue dialogue = finalize_dialogue(raw, GeneratorMeta{"stub", "", 0});
        ++produced;

        // Turn-count identity: sum of k_i plus one bridge turn per topic change.
        std::size_t expected_turns = mp.relation_sentences.size();
        for (const auto& passage : mp.passages) expected_turns += passage.sentences.size();
        expect(dialogue.turns.size() == expected_turns, "turn count != sum k_i + (n-1)");

        // Truncation bounds against the known source length m.
        for (const auto& passage : mp.passages) {
            const std::size_t m = m_of.at(passage.entity);
            const std::size_t k = passage.sentences.size();
            if (m >= 6) {
                expect(k >= 3 && k <= 6, "k out of [3,6] for m >= 6");
            } else if (m <= 3) {
                expect(k == m, "k != m for m <= 3");
            } else {
                expect(k >= 3 && k <= m, "k out of [3,m] for 3 < m < 6");
            }
            for (std::size_t s = 0; s < k; ++s) {
                expect(passage.sentences[s] == corpus.at(passage.entity)[s],
                       "truncated passage is not a prefix of its source");
            }
        }

        // Answers verbatim, in order, per topic; shifts exactly at relation turns.
        std::map<int, std::vector<std::string>> per_topic;
        for (std::size_t t = 0; t < dialogue.turns.size(); ++t) {
            const QATurn& turn = dialogue.turns[t];
            expect(turn.is_topic_shift == (turn.source_kind == SourceKind::RelationSentence),
                   "is_topic_shift does not match source kind");
            if (turn.source_kind == SourceKind::PassageSentence) {
                per_topic[turn.topic_index].push_back(turn.answer);
            } else {
                expect(turn.answer ==
                           mp.relation_sentences[static_cast<std::size_t>(turn.topic_index) - 2],
                       "relation turn answer mismatch");
            }
        }
        for (std::size_t i = 0; i < mp.passages.size(); ++i) {
            expect(per_topic[static_cast<int>(i) + 1] == mp.passages[i].sentences,
                   "per-topic answers do not reconstruct the truncated passage");
        }

        // Segment labels: start at 0, non-decreasing, steps of at most 1.
        expect(dialogue.segment_labels.front() == 0, "labels do not start at 0");
        for (std::size_t t = 1; t < dialogue.segment_labels.size(); ++t) {
            const int step = dialogue.segment_labels[t] - dialogue.segment_labels[t - 1];
            expect(step == 0 || step == 1, "label step outside {0,1}");
        }
    }
}

// ---- criterion 3: walk sampler statistics ----

void criterion_walks() {
    std::ifstream in(kFixtures + "/graph.jsonl");
    const KnowledgeGraph graph = load_graph(in).graph;
    const std::size_t triplets = graph.size();

    const auto start = Clock::now();
    std::map<std::pair<std::string, std::string>, int> start_counts;
    Rng rng(9001);
    for (int i = 0; i < 10000; ++i) {
        const Walk walk = sample_walk(graph, rng, 4);
        const std::set<std::string> distinct(walk.entities.begin(), walk.entities.end());
        expect(distinct.size() == walk.entities.size(), "walk repeats an entity");
        expect(walk.entities.size() <= 4, "walk exceeds max_topics");
        start_counts[{walk.entities[0], walk.entities[1]}]++;
    }
    const double elapsed = std::chrono::duration<double>(Clock::now() - start).count();
    expect(elapsed < 5.0, "10000 walks took " + std::to_string(elapsed) + " s (limit 5 s)");

    expect(start_counts.size() == triplets, "some triplet never started a walk");
    const double uniform = 10000.0 / static_cast<double>(triplets);
    for (const auto& [edge, count] : start_counts) {
        const bool in_band = count >= uniform * 0.9 && count <= uniform * 1.1;
        expect(in_band, "start frequency for " + edge.first + "->" + edge.second + " is " +
                            std::to_string(count) + ", outside +/-10% of uniform");
    }
}

// ---- criterion 4: metric oracle equivalence ----

void criterion_metric_oracles() {
    Rng rng(5150);
    std::vector<SegmentationInstance> seg_instances;
    for (int i = 0; i < 500; ++i) {
        const std::size_t length = 1 + rng.uniform_below(20);
        auto labels = [&] {
            std::vector<int> out(length, 0);
            for (std::size_t t = 1; t < length; ++t) {
                out[t] = out[t - 1] + static_cast<int>(rng.uniform_below(2));
            }
            return out;
        };
        seg_instances.push_back(SegmentationInstance{labels(), labels()});
    }
    const MetricsReport seg_report = seg_metrics(seg_instances);
    const oracle::Scores seg_expected = oracle::seg_oracle(seg_instances);
    expect(seg_report.precision == seg_expected.precision, "seg precision != oracle");
    expect(seg_report.recall == seg_expected.recall, "seg recall != oracle");
    expect(seg_report.f1 == seg_expected.f1, "seg f1 != oracle");
    expect(seg_report.exact_match == seg_expected.exact_match, "seg EM != oracle");

    std::vector<DetectionInstance> detect_instances;
    for (int i = 0; i < 500; ++i) {
        const std::size_t length = 1 + rng.uniform_below(20);
        DetectionInstance instance;
        for (std::size_t t = 0; t < length; ++t) {
            instance.gold.push_back(t > 0 && rng.uniform_below(3) == 0);
            instance.pred.push_back(rng.uniform_below(3) == 0);
        }
        detect_instances.push_back(std::move(instance));
    }
    const MetricsReport detect_report = detect_metrics(detect_instances);
    const oracle::Scores detect_expected = oracle::detect_oracle(detect_instances);
    expect(detect_report.precision == detect_expected.precision, "detect precision != oracle");
    expect(detect_report.recall == detect_expected.recall, "detect recall != oracle");
    expect(detect_report.f1 == detect_expected.f1, "detect f1 != oracle");
    expect(detect_report.exact_match == detect_expected.exact_match, "detect EM != oracle");
    expect(*detect_report.turn_accuracy == detect_expected.turn_accuracy,
           "detect turn accuracy != oracle");

    // Worked examples from the metric definitions.
    std::vector<int> gold(7, 0), pred(7, 0);
    for (std::size_t t = 5; t < 7; ++t) gold[t] = 1;
    pred[3] = pred[4] = 1;
    pred[5] = pred[6] = 2;
    const MetricsReport worked = seg_metrics({SegmentationInstance{gold, pred}});
    expect(worked.precision == 0.5, "worked seg precision != 0.5");
    expect(worked.recall == 1.0, "worked seg recall != 1.0");
    expect(std::abs(worked.f1 - 2.0 / 3.0) < 1e-15, "worked seg f1 != 2/3");

    const MetricsReport worked_detect = detect_metrics(
        {DetectionInstance{{false, false, true, false}, {false, true, true, false}}});
    expect(*worked_detect.turn_accuracy == 0.75, "worked detect accuracy != 0.75");
    expect(worked_detect.precision == 0.5, "worked detect precision != 0.5");
    expect(worked_detect.recall == 1.0, "worked detect recall != 1.0");
    expect(std::abs(worked_detect.f1 - 2.0 / 3.0) < 1e-15, "worked detect f1 != 2/3");
}

// ---- criterion 5: BLEU-4 pinned values ----

void criterion_bleu() {
    expect(bleu4("the cat sat on the mat", {"the cat sat on the mat"}) == 1.0,
           "identity BLEU != 1.0");
    expect(bleu4("the cat sat", {"the cat sat"}) == 0.0, "3-token candidate BLEU != 0.0");

    // Values computed with the clipped-precision oracle before the
    // implementation was written, then frozen.
    struct Case {
        std::string candidate;
        std::vector<std::string> references;
        double expected;
    };
    const std::vector<Case> cases = {
        {"the cat sat on mat", {"the cat sat on the mat"}, 0.57893006746740983},
        {"The cat sat on the mat.", {"the cat sat on the mat"}, 0.80910671157022118},
        {"the cat the cat sat on the mat",
         {"the cat sat on the mat", "the cat meowed and the cat slept"},
         0.74008280449228525},
        {"a b c d", {"a b c d x y", "a b"}, 1.0},
        {"it is a truth universally acknowledged",
         {"it is a truth universally acknowledged that a single man"},
         0.51341711903259202},
    };
    for (const auto& c : cases) {
        const double got = bleu4(c.candidate, c.references);
        expect(std::abs(got - c.expected) <= 1e-9,
               "BLEU for '" + c.candidate + "' = " + std::to_string(got) + ", expected " +
                   std::to_string(c.expected));
        const double oracle_value = oracle::bleu_oracle(c.candidate, c.references);
        expect(std::abs(got - oracle_value) <= 1e-9, "BLEU diverges from the oracle");
    }
}

// ---- criterion 6: dataset statistics ----

Dialogue stats_dialogue(const std::string& id,
                        const std::vector<std::tuple<std::string, std::string, int>>& turns) {
    Dialogue d;
    d.id = id;
    d.meta = {"stub", "", 0};
    for (const auto& [q, a, label] : turns) {
        QATurn turn;
        turn.question = q;
        turn.answer = a;
        turn.topic_index = label + 1;
        turn.is_topic_shift = !d.turns.empty() && label > d.segment_labels.back();
        turn.source_kind =
            turn.is_topic_shift ? SourceKind::RelationSentence : SourceKind::PassageSentence;
        d.turns.push_back(turn);
        d.segment_labels.push_back(label);
    }
    d.entities = {"A"};
    return d;
}

void criterion_stats() {
    const std::vector<Dialogue> dialogues = {
        stats_dialogue("d1", {{"Who is A?", "A is here.", 0},
                              {"Where?", "By the river.", 0},
                              {"What is B?", "A touches B.", 1}}),
        stats_dialogue("d2", {{"Who is C?", "C is tall.", 0}, {"Why?", "Genes.", 0}}),
        stats_dialogue("d3", {{"Name?", "D.", 0}}),
    };
    const DatasetStats stats = dataset_stats(dialogues);
    expect(stats.dialogues == 3, "dialogue count != 3");
    expect(stats.turns == 6, "turn count != 6");
    expect(stats.avg_topics == 4.0 / 3.0, "avg topics != 4/3");
    expect(stats.avg_tokens_per_turn == 26.0 / 6.0, "avg tokens per turn != 26/6");
    expect(stats.unique_tokens == 20, "unique token count != 20");

    const auto j = stats_to_json(stats);
    for (const char* field : {"dialogues", "turns", "avg_topics", "avg_tokens_per_turn",
                              "unique_tokens"}) {
        expect(j.contains(field), std::string("stats JSON lacks field ") + field);
    }
}

// ---- criterion 7: prompt conformance ----

void criterion_prompt() {
    PromptContext ctx;
    ctx.history = {
        {"Who is Benjamin Gibbard?",
         "Benjamin Gibbard is an American singer, songwriter and guitarist."},
        {"Who is Benjamin Gibbard's wife?",
         "Zooey Deschanel, who was married to Ben Gibbard from September 19th 2009 until "
         "December 12th 2012, is his wife."},
    };
    ctx.target_answer = "Zooey Claire Deschanel is an American actress and musician.";
    ctx.shift = std::make_pair(std::string("Ben Gibbard"), std::string("Zooey Deschanel"));

    const std::string expected =
        "You are an automatic assistant that generates appropriate question based on "
        "the predefined answer. Generate a single question that is most suitable for "
        "the given dialogue history and target answer.\n"
        "Please fill in only [BLANK] in the next dialogue.\n"
        "Note that the conversation topic has changed into Zooey Deschanel from Ben "
        "Gibbard.\n"
        "\n"
        "START\n"
        "A: Who is Benjamin Gibbard?\n"
        "B: Benjamin Gibbard is an American singer, songwriter and guitarist.\n"
        "A: Who is Benjamin Gibbard's wife?\n"
        "B: Zooey Deschanel, who was married to Ben Gibbard from September 19th 2009 "
        "until December 12th 2012, is his wife.\n"
        "A: [BLANK]\n"
        "B: Zooey Claire Deschanel is an American actress and musician.\n"
        "END\n";

    const std::string prompt = render_prompt(ctx);
    expect(prompt == expected, "rendered prompt differs from the checked-in expected string");
    expect(prompt.find("Note that the conversation topic has changed into Zooey Deschanel "
                       "from Ben Gibbard.") != std::string::npos,
           "shift line missing or reworded");
}

// ---- criterion 8: remote-client contract against a local double ----

struct DoubleServer {
    httplib::Server server;
    int port = 0;
    std::thread thread;

    void start() {
        server.new_task_queue = [] { return new httplib::ThreadPool(16); };
        port = server.bind_to_any_port("127.0.0.1");
        thread = std::thread([this] { server.listen_after_bind(); });
        server.wait_until_ready();
    }
    ~DoubleServer() {
        server.stop();
        if (thread.joinable()) thread.join();
    }
    std::string base(const std::string& path) const {
        return "http://127.0.0.1:" + std::to_string(port) + path;
    }
};

void criterion_clients() {
    const auto fast = [] {
        RetryPolicy policy;
        policy.base_delay = std::chrono::milliseconds(60);
        return policy;
    }();

    // Chat client: retry count and backoff ordering.
    {
        DoubleServer ts;
        std::vector<Clock::time_point> arrivals;
        std::mutex arrivals_mutex;
        ts.server.Post("/v1/chat/completions",
                       [&](const httplib::Request&, httplib::Response& res) {
                           std::lock_guard<std::mutex> lock(arrivals_mutex);
                           arrivals.push_back(Clock::now());
                           res.status = 500;
                       });
        ts.start();

        ChatConfig config;
        config.base_url = ts.base("/v1");
        config.model = "m";
        config.retry = fast;
        ChatClient client(config);
        bool threw = false;
        try {
            client.complete("p");
        } catch (const TransportError&) {
            threw = true;
        }
        expect(threw, "chat client did not surface TransportError after exhaustion");
        expect(arrivals.size() == 3,
               "chat client made " + std::to_string(arrivals.size()) + " attempts, expected 3");
        if (arrivals.size() == 3) {
            const auto gap1 = arrivals[1] - arrivals[0];
            const auto gap2 = arrivals[2] - arrivals[1];
            using std::chrono::duration_cast;
            using std::chrono::milliseconds;
            expect(duration_cast<milliseconds>(gap1).count() >= 45,
                   "first retry delay shorter than the 60 ms base");
            expect(gap2 > gap1, "backoff delays are not increasing");
        }
    }

    // Chat client: recovery on the final attempt.
    {
        DoubleServer ts;
        std::atomic<int> hits{0};
        ts.server.Post("/v1/chat/completions",
                       [&](const httplib::Request&, httplib::Response& res) {
                           if (++hits < 3) {
                               res.status = 500;
                               return;
                           }
                           res.set_content(
                               R"({"choices":[{"message":{"content":"Who painted it?"}}]})",
                               "application/json");
                       });
        ts.start();

        ChatConfig config;
        config.base_url = ts.base("/v1");
        config.model = "m";
        config.retry = fast;
        ChatClient client(config);
        std::string answer;
        try {
            answer = client.complete("p");
        } catch (const std::exception& e) {
            expect(false, std::string("chat client failed to recover: ") + e.what());
        }
        expect(answer == "Who painted it?", "chat client returned wrong completion");
        expect(hits == 3, "chat client retried the wrong number of times");
    }

    // Chat client: bounded in-flight requests.
    {
        DoubleServer ts;
        std::atomic<int> current{0};
        std::atomic<int> peak{0};
        ts.server.Post("/v1/chat/completions",
                       [&](const httplib::Request&, httplib::Response& res) {
                           const int now = ++current;
                           int snapshot = peak.load();
                           while (now > snapshot && !peak.compare_exchange_weak(snapshot, now)) {
                           }
                           std::this_thread::sleep_for(std::chrono::milliseconds(30));
                           --current;
                           res.set_content(R"({"choices":[{"message":{"content":"x"}}]})",
                                           "application/json");
                       });
        ts.start();

        ChatConfig config;
        config.base_url = ts.base("/v1");
        config.model = "m";
        config.retry = fast;
        config.max_in_flight = 3;
        ChatClient client(config);

        std::vector<std::thread> callers;
        for (int i = 0; i < 12; ++i) {
            callers.emplace_back([&client] { client.complete("p"); });
        }
        for (auto& t : callers) t.join();
        expect(peak.load() <= 3, "chat client exceeded max_in_flight: peak " +
                                     std::to_string(peak.load()));
        expect(peak.load() >= 2, "concurrency double saw no parallelism; test inconclusive");
    }

    // Wiki retriever: same contract.
    {
        DoubleServer ts;
        std::vector<Clock::time_point> arrivals;
        std::mutex arrivals_mutex;
        ts.server.Get("/w/api.php", [&](const httplib::Request&, httplib::Response& res) {
            std::lock_guard<std::mutex> lock(arrivals_mutex);
            arrivals.push_back(Clock::now());
            res.status = 503;
        });
        ts.start();

        WikiConfig config;
        config.base_url = ts.base("/w/api.php");
        config.retry = fast;
        WikiRetriever retriever(config);
        bool threw = false;
        try {
            retriever.retrieve("anything");
        } catch (const TransportError&) {
            threw = true;
        }
        expect(threw, "wiki retriever did not surface TransportError after exhaustion");
        expect(arrivals.size() == 3,
               "wiki retriever made " + std::to_string(arrivals.size()) +
                   " attempts, expected 3");
        if (arrivals.size() == 3) {
            expect(arrivals[2] - arrivals[1] > arrivals[1] - arrivals[0],
                   "wiki retriever backoff not increasing");
        }
    }

    {
        DoubleServer ts;
        std::atomic<int> current{0};
        std::atomic<int> peak{0};
        ts.server.Get("/w/api.php", [&](const httplib::Request& req, httplib::Response& res) {
            const int now = ++current;
            int snapshot = peak.load();
            while (now > snapshot && !peak.compare_exchange_weak(snapshot, now)) {
            }
            std::this_thread::sleep_for(std::chrono::milliseconds(30));
            --current;
            if (req.get_param_value("list") == "search") {
                res.set_content(R"({"query":{"search":[{"title":"T"}]}})", "application/json");
            } else {
                res.set_content(R"({"query":{"pages":{"1":{"extract":"T is a thing."}}}})",
                                "application/json");
            }
        });
        ts.start();

        WikiConfig config;
        config.base_url = ts.base("/w/api.php");
        config.retry = fast;
        config.max_in_flight = 3;
        WikiRetriever retriever(config);

        std::vector<std::thread> callers;
        for (int i = 0; i < 10; ++i) {
            callers.emplace_back([&retriever] { retriever.retrieve("T"); });
        }
        for (auto& t : callers) t.join();
        expect(peak.load() <= 3, "wiki retriever exceeded max_in_flight: peak " +
                                     std::to_string(peak.load()));
    }
}

} // namespace

int main(int argc, char** argv) {
    if (argc < 2) {
        std::fprintf(stderr, "usage: acceptance_tests <path-to-mp2d-binary>\n");
        return 2;
    }
    g_binary = argv[1];

    int failed = 0;
    failed += !run_criterion(1, "end-to-end golden (seed 42, n=5, concurrency 1 vs 4, < 1 s)",
                             criterion_golden);
    failed += !run_criterion(2, "structural invariants over 200 randomized dialogues",
                             criterion_structure);
    failed += !run_criterion(3, "walk sampler: 10000 walks, distinct entities, uniform starts",
                             criterion_walks);
    failed += !run_criterion(4, "segmentation/detection metrics equal brute-force oracles",
                             criterion_metric_oracles);
    failed += !run_criterion(5, "BLEU-4 identity, short-candidate zero, five pinned cases",
                             criterion_bleu);
    failed += !run_criterion(6, "dataset statistics match hand counts and field shape",
                             criterion_stats);
    failed += !run_criterion(7, "question prompt matches the checked-in template",
                             criterion_prompt);
    failed += !run_criterion(8, "remote clients: retries, backoff, bounded concurrency",
                             criterion_clients);

    if (failed) {
        std::printf("%d criterion(s) failed\n", failed);
        return 1;
    }
    std::printf("all acceptance criteria passed\n");
    return 0;
}
