#include "quivdual/errors.hpp"

namespace qd {

const char *errc_name(Errc c) {
    switch (c) {
    case Errc::pole: return "POLE";
    case Errc::insufficient_box: return "INSUFFICIENT_BOX";
    case Errc::box_mismatch: return "BOX_MISMATCH";
    case Errc::unknown_node: return "UNKNOWN_NODE";
    case Errc::framed_node: return "FRAMED_NODE";
    case Errc::negative_rank: return "NEGATIVE_RANK";
    case Errc::invalid_quiver: return "INVALID_QUIVER";
    case Errc::potential_pattern: return "POTENTIAL_PATTERN";
    case Errc::not_catalogued: return "NOT_CATALOGUED";
    case Errc::rank_constraint: return "RANK_CONSTRAINT";
    case Errc::not_in_family: return "NOT_IN_FAMILY";
    case Errc::parse: return "PARSE";
    case Errc::usage: return "USAGE";
    }
    return "UNKNOWN";
}

} // namespace qd
