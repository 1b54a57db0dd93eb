#include "okvalid/error.hpp"

namespace okvalid {

std::string_view to_string(Stage stage) {
    switch (stage) {
    case Stage::ok: return "ok";
    case Stage::input: return "input";
    case Stage::residual: return "residual";
    case Stage::inverse_bound: return "inverse_bound";
    case Stage::lipschitz: return "lipschitz";
    case Stage::radii: return "radii";
    case Stage::consistency: return "consistency";
    }
    return "unknown";
}

Stage stage_from_string(std::string_view name) {
    for (Stage s : {Stage::ok, Stage::input, Stage::residual, Stage::inverse_bound,
                    Stage::lipschitz, Stage::radii, Stage::consistency}) {
        if (to_string(s) == name) return s;
    }
    throw DomainError("unknown stage name: " + std::string(name));
}

}  // namespace okvalid
