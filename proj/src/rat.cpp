#include "plh/rat.hpp"

#include <cctype>
#include <ostream>

#include "plh/errors.hpp"

namespace plh {

namespace {

bool valid_integer_token(const std::string& s, bool allow_sign) {
    if (s.empty()) return false;
    std::size_t i = 0;
    if (allow_sign && (s[0] == '-' || s[0] == '+')) i = 1;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i) {
        if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    }
    return true;
}

}  // namespace

Rat::Rat(long num, long den) : q_(num, den == 0 ? 1 : den) {
    if (den == 0) throw ValidationError("rational with zero denominator");
    q_.canonicalize();
}

Rat Rat::parse(const std::string& text) {
    const auto slash = text.find('/');
    if (slash == std::string::npos) {
        if (!valid_integer_token(text, true)) throw ValidationError("malformed rational: '" + text + "'");
        return Rat(mpq_class(mpz_class(text, 10)));
    }
    const std::string num = text.substr(0, slash);
    const std::string den = text.substr(slash + 1);
    if (!valid_integer_token(num, true) || !valid_integer_token(den, false))
        throw ValidationError("malformed rational: '" + text + "'");
    mpz_class d(den, 10);
    if (d == 0) throw ValidationError("rational with zero denominator: '" + text + "'");
    mpq_class q(mpz_class(num, 10), d);
    q.canonicalize();
    return Rat(std::move(q));
}

Rat Rat::reciprocal() const {
    if (sign() == 0) throw ValidationError("reciprocal of zero");
    mpq_class r;
    mpq_inv(r.get_mpq_t(), q_.get_mpq_t());
    return Rat(std::move(r));
}

Rat operator/(const Rat& a, const Rat& b) {
    if (b.sign() == 0) throw ValidationError("division by zero");
    return Rat(mpq_class(a.q_ / b.q_));
}

std::ostream& operator<<(std::ostream& os, const Rat& r) { return os << r.q_; }

}  // namespace plh
