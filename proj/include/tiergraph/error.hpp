#pragma once

#include <stdexcept>
#include <string>

namespace tiergraph {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Bad or missing configuration, including a project root that does not exist.
class ConfigError : public Error {
public:
    using Error::Error;
};

/// A persisted snapshot failed its checksum or referential-integrity check.
class IntegrityError : public Error {
public:
    using Error::Error;
};

class NotFoundError : public Error {
public:
    using Error::Error;
};

/// Caller supplied an argument outside the accepted domain (empty keyword, bad format, ...).
class ValidationError : public Error {
public:
    using Error::Error;
};

} // namespace tiergraph
