#pragma once
#include <stdexcept>
#include <string>

namespace qd {

enum class Errc {
    pole,
    insufficient_box,
    box_mismatch,
    unknown_node,
    framed_node,
    negative_rank,
    invalid_quiver,
    potential_pattern,
    not_catalogued,
    rank_constraint,
    not_in_family,
    parse,
    usage,
};

const char *errc_name(Errc c);

class Error : public std::runtime_error {
  public:
    Error(Errc c, const std::string &what)
        : std::runtime_error(std::string(errc_name(c)) + ": " + what), code_(c) {}
    Errc code() const { return code_; }

  private:
    Errc code_;
};

} // namespace qd
