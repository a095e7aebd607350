#include "mixedlab/config.hpp"

namespace mixedlab {

namespace {
Config g_config;
}

const Config& config() { return g_config; }

void set_config(const Config& cfg) {
    if (cfg.qubit_cap < 1 || cfg.qubit_cap > 30) {
        throw DomainError("qubit cap must lie in [1, 30], got " + std::to_string(cfg.qubit_cap));
    }
    g_config = cfg;
}

void check_qubit_cap(int qubits, const std::string& what) {
    if (qubits > config().qubit_cap) {
        throw CapacityError(what + ": " + std::to_string(qubits) + " qubits exceeds the cap of " +
                            std::to_string(config().qubit_cap));
    }
}

}  // namespace mixedlab
