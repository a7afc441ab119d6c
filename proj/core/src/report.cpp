#include "asclt/report.hpp"

namespace asclt {

std::string_view to_string(Condition c) {
    switch (c) {
        case Condition::C2: return "C2";
        case Condition::C3: return "C3";
        case Condition::Lemma1: return "Lemma1";
        case Condition::Lemma5: return "Lemma5";
        case Condition::C4Growth: return "C4growth";
        case Condition::MuMoment: return "MuMoment";
        case Condition::Lipschitz: return "Lipschitz";
        case Condition::RatioConsecutive: return "RatioConsecutive";
    }
    return "unknown";
}

}  // namespace asclt
