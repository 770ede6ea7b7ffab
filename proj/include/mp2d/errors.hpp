#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace mp2d {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed input data; carries the 1-based line number when known.
class ParseError : public Error {
public:
    ParseError(const std::string& message, std::size_t line)
        : Error("line " + std::to_string(line) + ": " + message), line_(line) {}
    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

/// A retrieval query matched nothing.
class NotFoundError : public Error {
public:
    explicit NotFoundError(std::string query)
        : Error("entity not found: " + query), query_(std::move(query)) {}
    const std::string& query() const { return query_; }

private:
    std::string query_;
};

/// HTTP failure that persisted through all retry attempts.
class TransportError : public Error {
public:
    using Error::Error;
};

/// A walk cannot become a dialogue because one entity has no passage.
class SkipWalkError : public Error {
public:
    explicit SkipWalkError(std::string entity)
        : Error("no passage for entity: " + entity), entity_(std::move(entity)) {}
    const std::string& entity() const { return entity_; }

private:
    std::string entity_;
};

/// The generator returned an empty completion.
class EmptyGenerationError : public Error {
public:
    using Error::Error;
};

/// Question generation failed mid-dialogue; remembers which turn.
class GenerationError : public Error {
public:
    GenerationError(const std::string& cause, std::size_t turn_index)
        : Error("turn " + std::to_string(turn_index) + ": " + cause),
          turn_index_(turn_index) {}
    std::size_t turn_index() const { return turn_index_; }

private:
    std::size_t turn_index_;
};

/// Data violates a documented invariant (label shapes, lengths, ...).
class ValidationError : public Error {
public:
    using Error::Error;
};

/// Bad run configuration (flags, env vars, config file).
class ConfigError : public Error {
public:
    using Error::Error;
};

} // namespace mp2d
