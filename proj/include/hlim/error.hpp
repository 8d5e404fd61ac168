#ifndef HLIM_ERROR_HPP
#define HLIM_ERROR_HPP

#include <stdexcept>
#include <string>

namespace hlim {

enum class Errc {
    domain_error,
    configuration_mismatch,
    no_convergence,
    inadmissible_shock,
    shooting_failure,
    cfl_violation,
    positivity_loss,
    corrupted_state,
    grid_insufficient,
    insufficient_data,
    invalid_config,
    io_error
};

inline const char* errc_name(Errc c) {
    switch (c) {
        case Errc::domain_error: return "domain_error";
        case Errc::configuration_mismatch: return "configuration_mismatch";
        case Errc::no_convergence: return "no_convergence";
        case Errc::inadmissible_shock: return "inadmissible_shock";
        case Errc::shooting_failure: return "shooting_failure";
        case Errc::cfl_violation: return "cfl_violation";
        case Errc::positivity_loss: return "positivity_loss";
        case Errc::corrupted_state: return "corrupted_state";
        case Errc::grid_insufficient: return "grid_insufficient";
        case Errc::insufficient_data: return "insufficient_data";
        case Errc::invalid_config: return "invalid_config";
        case Errc::io_error: return "io_error";
    }
    return "unknown";
}

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& what)
        : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

    Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& what) {
    throw Error(code, what);
}

}

#endif
