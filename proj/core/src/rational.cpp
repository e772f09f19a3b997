#include "hxplain/rational.hpp"

#include <cctype>
#include <stdexcept>

namespace hxplain {

Rat::Rat(long num, long den)
{
    if (den == 0)
        throw std::domain_error("rational with zero denominator");
    v_ = mpq_class(num, den);
    v_.canonicalize();
}

Rat& Rat::operator/=(const Rat& o)
{
    if (o.is_zero())
        throw std::domain_error("division by zero");
    v_ /= o.v_;
    return *this;
}

namespace {

bool all_digits(std::string_view s)
{
    if (s.empty())
        return false;
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c)))
            return false;
    return true;
}

} // namespace

bool Rat::try_parse(std::string_view text, Rat& out)
{
    std::string_view s = text;
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
        s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
        s.remove_suffix(1);
    bool neg = false;
    if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
        neg = s.front() == '-';
        s.remove_prefix(1);
    }
    if (s.empty())
        return false;

    mpq_class q;
    if (auto slash = s.find('/'); slash != std::string_view::npos) {
        auto n = s.substr(0, slash);
        auto d = s.substr(slash + 1);
        if (!all_digits(n) || !all_digits(d))
            return false;
        mpz_class den(std::string(d), 10);
        if (den == 0)
            return false;
        q = mpq_class(mpz_class(std::string(n), 10), den);
    } else if (auto dot = s.find('.'); dot != std::string_view::npos) {
        auto ip = s.substr(0, dot);
        auto fp = s.substr(dot + 1);
        if ((ip.empty() && fp.empty()) || (!ip.empty() && !all_digits(ip)) || (!fp.empty() && !all_digits(fp)))
            return false;
        std::string digits = std::string(ip) + std::string(fp);
        mpz_class scale;
        mpz_ui_pow_ui(scale.get_mpz_t(), 10, fp.size());
        q = mpq_class(mpz_class(digits.empty() ? "0" : digits, 10), scale);
    } else {
        if (!all_digits(s))
            return false;
        q = mpq_class(mpz_class(std::string(s), 10));
    }
    q.canonicalize();
    if (neg)
        q = -q;
    out = Rat(q);
    return true;
}

Rat Rat::parse(std::string_view text)
{
    Rat r;
    if (!try_parse(text, r))
        throw std::invalid_argument("not a rational: '" + std::string(text) + "'");
    return r;
}

std::string Rat::str() const
{
    if (is_integer())
        return v_.get_num().get_str();
    return v_.get_num().get_str() + "/" + v_.get_den().get_str();
}

std::size_t Rat::hash() const
{
    std::size_t h = std::hash<std::string>{}(v_.get_num().get_str(16));
    h ^= std::hash<std::string>{}(v_.get_den().get_str(16)) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return h;
}

} // namespace hxplain
