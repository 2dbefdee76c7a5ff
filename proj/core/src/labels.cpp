#include "hms/labels.hpp"

#include <sstream>

namespace hms {

std::string GeneratorLabel::str() const {
    std::ostringstream os;
    auto mono = [&]() {
        os << "x^" << xe;
        if (ye != 0) os << " y^" << ye;
    };
    if (dual) os << "(";
    switch (kind) {
        case LabelKind::SameEdge:
            os << "e" << edge << "[c" << component << "]:";
            mono();
            break;
        case LabelKind::CrossEdge:
            os << "e" << edge << "[c" << component << ";]:";
            mono();
            break;
        case LabelKind::RayTail:
            os << "r" << edge << "[c" << component << "]:x^" << xe;
            break;
        case LabelKind::RayChord:
            os << "r" << edge << "[c" << component << ";]:x^" << xe;
            break;
        case LabelKind::JointPoint:
            os << "joint v" << vertex << "[c" << component << "]";
            break;
        case LabelKind::Unit:
            os << "1[c" << component << "]";
            break;
        case LabelKind::PointClass:
            os << "pt[c" << component << "]";
            break;
    }
    if (dual) os << ")*";
    if (pants >= 0) os << "@P" << pants;
    return os.str();
}

int label_degree(const GeneratorLabel& l) {
    switch (l.kind) {
        case LabelKind::SameEdge: return l.dual ? 1 : 0;
        case LabelKind::CrossEdge: return l.dual ? 0 : 1;
        case LabelKind::RayTail: return 0;
        case LabelKind::RayChord: return 1;
        case LabelKind::JointPoint: return l.dual ? 1 : 0;
        case LabelKind::Unit: return 0;
        case LabelKind::PointClass: return 1;
    }
    return 0;
}

}  // namespace hms
