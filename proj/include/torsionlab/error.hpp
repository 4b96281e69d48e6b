#pragma once

#include <stdexcept>
#include <string>

namespace torsionlab {

enum class ErrorKind {
    domain,        // argument outside the operation's domain
    parse,         // malformed input text
    io,            // file could not be read or written
    degenerate,    // input admits no well-defined answer (e.g. all denominators vanish)
    inconsistent,  // input data contradict each other (remainders, residuals)
    convergence,   // an iteration hit its cap
};

inline const char* to_string(ErrorKind k) {
    switch (k) {
        case ErrorKind::domain: return "domain";
        case ErrorKind::parse: return "parse";
        case ErrorKind::io: return "io";
        case ErrorKind::degenerate: return "degenerate";
        case ErrorKind::inconsistent: return "inconsistent";
        case ErrorKind::convergence: return "convergence";
    }
    return "unknown";
}

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

}  // namespace torsionlab
