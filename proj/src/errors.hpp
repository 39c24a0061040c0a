#pragma once

#include <stdexcept>
#include <string>

namespace latdist {

enum class errc {
    parse,
    bad_argument,
    rank_deficient,
    singular,
    budget_exceeded,
    non_dividing,
    not_unipotent,
    invalid_gamma,
    no_witness,
    violation,
    internal,
};

/** Stable identifier for an error class, suitable for reports and the C API. */
inline const char* errc_name(errc c) {
    switch (c) {
    case errc::parse: return "parse";
    case errc::bad_argument: return "bad_argument";
    case errc::rank_deficient: return "rank_deficient";
    case errc::singular: return "singular";
    case errc::budget_exceeded: return "budget_exceeded";
    case errc::non_dividing: return "non_dividing";
    case errc::not_unipotent: return "not_unipotent";
    case errc::invalid_gamma: return "invalid_gamma";
    case errc::no_witness: return "no_witness";
    case errc::violation: return "violation";
    case errc::internal: return "internal";
    }
    return "unknown";
}

class error : public std::runtime_error {
public:
    error(errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
    errc code() const { return code_; }

private:
    errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& what) {
    throw error(code, what);
}

}  // namespace latdist
