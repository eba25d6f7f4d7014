#include "quivdual/rational.hpp"
#include "quivdual/errors.hpp"

namespace qd {

std::string to_string(const Q &q) {
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

Q parse_rational(const std::string &s) {
    Q q;
    if (s.empty() || q.set_str(s, 10) != 0 || q.get_den() == 0)
        throw Error(Errc::parse, "not a rational: '" + s + "'");
    q.canonicalize();
    return q;
}

Q binomial(const Q &E, unsigned k) {
    Q r = 1;
    for (unsigned i = 0; i < k; ++i) {
        r *= E - i;
        r /= i + 1;
    }
    return r;
}

} // namespace qd
