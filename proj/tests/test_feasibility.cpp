#include <doctest.h>

#include "fixtures.hpp"
#include "oracles.hpp"

#include "hxplain/feasibility.hpp"

#include <random>

using namespace hxplain;
using fixture::c1;

namespace {

ConstraintSystem sys(std::vector<std::string> vars, std::vector<LinearConstraint> cs)
{
    return ConstraintSystem{std::move(vars), std::move(cs)};
}

void check_feasible_witness(const ConstraintSystem& cs, const FeasibilityResult& r)
{
    const auto& f = std::get<Feasible>(r);
    CHECK(f.strictness_margin >= Rat(0));
    CHECK(f.strictness_margin <= Rat(1));
    for (const auto& c : cs.constraints)
        CHECK(eval_constraint(c, f.witness));
}

bool brute_minimal(const ConstraintSystem& cs, const IIS& iis)
{
    if (is_feasible(solve_feasibility(cs.subset(iis.indices))))
        return false;
    for (std::size_t drop = 0; drop < iis.indices.size(); ++drop) {
        std::vector<std::size_t> rest;
        for (std::size_t k = 0; k < iis.indices.size(); ++k)
            if (k != drop)
                rest.push_back(iis.indices[k]);
        if (!is_feasible(solve_feasibility(cs.subset(rest))))
            return false;
    }
    return true;
}

} // namespace

TEST_CASE("interval examples")
{
    auto ok = sys({"x"}, {c1("x", Op::GE, Rat(1)), c1("x", Op::LE, Rat(2))});
    auto r = solve_feasibility(ok);
    REQUIRE(is_feasible(r));
    check_feasible_witness(ok, r);

    auto bad = sys({"x"}, {c1("x", Op::GE, Rat(1)), c1("x", Op::LE, Rat(0))});
    auto rb = solve_feasibility(bad);
    REQUIRE_FALSE(is_feasible(rb));
    const auto& cert = std::get<Infeasible>(rb).certificate;
    REQUIRE(cert.size() == 2);
    CHECK(cert[0].weight == cert[1].weight);
    CHECK(verify_certificate(bad, std::get<Infeasible>(rb)));
    CHECK_FALSE(fm_eliminate_all(bad));
}

TEST_CASE("strict inequality semantics")
{
    CHECK_FALSE(is_feasible(solve_feasibility(sys({"x"}, {c1("x", Op::LT, Rat(1)), c1("x", Op::GT, Rat(1))}))));
    auto half = sys({"x"}, {c1("x", Op::LT, Rat(1)), c1("x", Op::GE, Rat(1))});
    auto rh = solve_feasibility(half);
    REQUIRE_FALSE(is_feasible(rh));
    CHECK(verify_certificate(half, std::get<Infeasible>(rh)));
    auto one = sys({"x"}, {c1("x", Op::LT, Rat(1))});
    auto r = solve_feasibility(one);
    REQUIRE(is_feasible(r));
    CHECK(std::get<Feasible>(r).strictness_margin > Rat(0));
    check_feasible_witness(one, r);
}

TEST_CASE("equalities and empty systems")
{
    CHECK(is_feasible(solve_feasibility(sys({}, {}))));
    CHECK(fm_eliminate_all(sys({}, {})));
    LinearConstraint sum({{"x", Rat(1)}, {"y", Rat(1)}}, Op::EQ, Rat(3));
    auto s = sys({"x", "y"}, {sum, c1("x", Op::EQ, Rat(5, 2)), c1("y", Op::GE, Rat(0))});
    auto r = solve_feasibility(s);
    REQUIRE(is_feasible(r));
    CHECK(std::get<Feasible>(r).witness.at("y") == Rat(1, 2));
    s.constraints.push_back(c1("y", Op::GT, Rat(1)));
    auto rb = solve_feasibility(s);
    REQUIRE_FALSE(is_feasible(rb));
    CHECK(verify_certificate(s, std::get<Infeasible>(rb)));
}

TEST_CASE("a tampered certificate does not verify")
{
    auto bad = sys({"x"}, {c1("x", Op::GE, Rat(1)), c1("x", Op::LE, Rat(0))});
    auto inf = std::get<Infeasible>(solve_feasibility(bad));
    inf.certificate.pop_back();
    CHECK_FALSE(verify_certificate(bad, inf));
}

TEST_CASE("solver agrees with Fourier-Motzkin on random systems")
{
    std::mt19937 rng(1234);
    int infeasible = 0;
    for (int i = 0; i < 300; ++i) {
        const int vars = std::uniform_int_distribution<int>(1, 5)(rng);
        const int cons = std::uniform_int_distribution<int>(1, 10)(rng);
        ConstraintSystem cs = oracle::random_system(rng, vars, cons);
        auto r = solve_feasibility(cs);
        CHECK(is_feasible(r) == fm_eliminate_all(cs));
        if (is_feasible(r)) {
            check_feasible_witness(cs, r);
        } else {
            ++infeasible;
            CHECK(verify_certificate(cs, std::get<Infeasible>(r)));
        }
    }
    CHECK(infeasible > 0);
}

TEST_CASE("FM refuses oversized systems")
{
    std::mt19937 rng(1);
    CHECK_THROWS_AS(fm_eliminate_all(oracle::random_system(rng, 9, 4)), ScaleExceeded);
    CHECK_THROWS_AS(fm_eliminate_all(oracle::random_system(rng, 2, 25)), ScaleExceeded);
}

TEST_CASE("deletion filter examples")
{
    auto s = sys({"x", "y"}, {c1("x", Op::GE, Rat(1)), c1("x", Op::LE, Rat(0)), c1("y", Op::GE, Rat(0))});
    CHECK(deletion_filter_iis(s).indices == std::vector<std::size_t>{0, 1});

    LinearConstraint sum({{"x", Rat(1)}, {"y", Rat(1)}}, Op::LE, Rat(1));
    auto tri = sys({"x", "y"}, {sum, c1("x", Op::GE, Rat(1)), c1("y", Op::GE, Rat(1))});
    auto iis = deletion_filter_iis(tri);
    CHECK(iis.indices == std::vector<std::size_t>{0, 1, 2});
    CHECK(brute_minimal(tri, iis));

    // two disjoint cores; the later one survives the index-order scan
    auto two = sys({"x", "y", "z"}, {c1("x", Op::GE, Rat(1)), c1("x", Op::LE, Rat(0)), c1("z", Op::GE, Rat(0)),
                                     c1("y", Op::GE, Rat(2)), c1("y", Op::LE, Rat(1)), c1("z", Op::LE, Rat(4))});
    auto one = deletion_filter_iis(two);
    CHECK(one.indices.size() == 2);
    CHECK(brute_minimal(two, one));

    CHECK_THROWS_AS(deletion_filter_iis(sys({"x"}, {c1("x", Op::GE, Rat(0))})), NotInfeasible);
}

TEST_CASE("IIS minimality on random infeasible systems")
{
    std::mt19937 rng(77);
    int tested = 0;
    while (tested < 100) {
        ConstraintSystem cs = oracle::random_system(rng, std::uniform_int_distribution<int>(1, 4)(rng),
                                                    std::uniform_int_distribution<int>(3, 10)(rng));
        if (is_feasible(solve_feasibility(cs)))
            continue;
        ++tested;
        IIS iis = deletion_filter_iis(cs);
        CHECK(std::is_sorted(iis.indices.begin(), iis.indices.end()));
        CHECK(brute_minimal(cs, iis));
    }
}

TEST_CASE("solver counters advance")
{
    auto before = solver_stats().solves;
    (void)solve_feasibility(sys({"x"}, {c1("x", Op::GE, Rat(1))}));
    CHECK(solver_stats().solves == before + 1);
}
