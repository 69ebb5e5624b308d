#include <doctest.h>

#include <cmath>
#include <numeric>

#include "covertime/estimator.hpp"
#include "covertime/generators.hpp"
#include "covertime/oracle.hpp"
#include "support/independent.hpp"

using namespace covertime;

TEST_CASE("coverage threshold") {
    CHECK(coverage_threshold(0.29, 100) == 29);
    CHECK(coverage_threshold(0.3, 10) == 3);
    CHECK(coverage_threshold(1.0, 7) == 7);
    CHECK(coverage_threshold(0.01, 50) == 0);
    CHECK(coverage_threshold(0.1, 10) == 1);
}

TEST_CASE("tau grid") {
    const auto grid = make_tau_grid(0.01, 0.30, 0.01);
    CHECK(grid.size() == 30);
    CHECK(grid.front() == doctest::Approx(0.01));
    CHECK(grid.back() == doctest::Approx(0.30));
    CHECK(make_tau_grid(0.5, 0.5, 0.1).size() == 1);
    CHECK_THROWS_AS(make_tau_grid(0.0, 0.3, 0.01), std::invalid_argument);
    CHECK_THROWS_AS(make_tau_grid(0.3, 0.2, 0.01), std::invalid_argument);
    CHECK_THROWS_AS(make_tau_grid(0.1, 1.2, 0.1), std::invalid_argument);
    CHECK_THROWS_AS(make_tau_grid(0.1, 0.3, 0.0), std::invalid_argument);
    const double bad[] = {0.3, 0.2};
    CHECK_THROWS_AS(check_tau_grid(bad), std::invalid_argument);
}

TEST_CASE("run_trial: start alone meets a threshold of one") {
    const auto g = generate(gen::Complete{10});
    Rng rng(1);
    const double taus[] = {0.1, 0.2, 1.0};
    const auto t = run_trial(g, strategy::Srw{}, 3, taus, rng);
    CHECK(t.steps_at_tau[0] == 0);
    CHECK(t.steps_at_tau[1] >= 1);
    CHECK(t.steps_at_tau[2] >= 9);
    CHECK_FALSE(t.truncated);
}

TEST_CASE("run_trial: MD on the path takes two moves") {
    const auto g = generate(gen::Path{3});
    Rng rng(1);
    const double taus[] = {1.0};
    CHECK(run_trial(g, strategy::MinDegree{5}, 0, taus, rng).steps_at_tau[0] == 2);
}

TEST_CASE("run_trial: steps are monotone and bounded below") {
    const auto g = generate(gen::BarabasiAlbert{400, 2, 4});
    const auto taus = make_tau_grid(0.05, 1.0, 0.05);
    for (const char* name : {"srw", "ep", "ad", "mdw", "rwc:d=3", "md:B=5", "sec:theta=5"}) {
        const auto spec = parse_strategy(name);
        Rng rng(derive_seed(5, 1));
        const auto t = run_trial(g, spec, 0, taus, rng);
        for (std::size_t i = 0; i < taus.size(); ++i) {
            const auto threshold = coverage_threshold(taus[i], g.order());
            CHECK(t.steps_at_tau[i] + 1 >= threshold);
            if (i)
                CHECK(t.steps_at_tau[i] >= t.steps_at_tau[i - 1]);
        }
    }
}

TEST_CASE("run_trial: truncation at the cap") {
    const auto g = generate(gen::Path{40});
    Rng rng(3);
    const double taus[] = {0.5, 1.0};
    const auto t = run_trial(g, strategy::Srw{}, 0, taus, rng, 10);
    CHECK(t.truncated);
    CHECK(default_step_cap(g) == 64 * 39 * 40);
}

TEST_CASE("estimate_curve: one trial equals that trial") {
    const auto g = generate(gen::Lollipop{5, 4});
    const auto taus = make_tau_grid(0.2, 1.0, 0.2);
    EstimateOptions opt;
    opt.trials = 1;
    opt.seed = 42;
    const auto curve = estimate_curve(g, strategy::Srw{}, 2, taus, opt);
    Rng rng(derive_seed(42, 2, 0));
    const auto trial = run_trial(g, strategy::Srw{}, 2, taus, rng);
    for (std::size_t i = 0; i < taus.size(); ++i) {
        CHECK(curve.points[i].rho == static_cast<double>(trial.steps_at_tau[i]));
        CHECK(curve.points[i].stddev == 0.0);
        CHECK(curve.points[i].trials == 1);
    }
}

TEST_CASE("estimate_curve: normalisation, monotonicity and determinism") {
    const auto g = generate(gen::BarabasiAlbert{500, 2, 8});
    const auto taus = make_tau_grid(0.01, 0.30, 0.01);
    EstimateOptions opt;
    opt.trials = 10;
    opt.seed = 7;
    for (const char* name : {"srw", "ep", "md:B=5"}) {
        const auto spec = parse_strategy(name);
        const auto a = estimate_curve(g, spec, 0, taus, opt);
        const auto b = estimate_curve(g, spec, 0, taus, opt);
        CHECK(curve_csv_rows(a) == curve_csv_rows(b));
        for (std::size_t i = 0; i < a.points.size(); ++i) {
            const auto& p = a.points[i];
            CHECK(p.rho == b.points[i].rho);
            CHECK(std::abs(p.c_tau * 500.0 - p.rho) <= std::nextafter(p.rho, INFINITY) - p.rho);
            CHECK(p.c_tau * 500.0 + 1e-12 >= static_cast<double>(coverage_threshold(p.tau, 500)) - 1.0);
            if (i)
                CHECK(p.rho >= a.points[i - 1].rho);
        }
    }
}

TEST_CASE("estimate_multi_start does not depend on the thread count") {
    const auto g = generate(gen::BarabasiAlbert{600, 2, 1});
    const auto taus = make_tau_grid(0.05, 0.25, 0.05);
    const auto starts = sample_starts(g, 16, 3);
    EstimateOptions one;
    one.trials = 6;
    one.seed = 11;
    EstimateOptions four = one;
    four.threads = 4;
    const auto a = estimate_multi_start(g, strategy::MinDegree{5}, starts, taus, one);
    const auto b = estimate_multi_start(g, strategy::MinDegree{5}, starts, taus, four);
    CHECK(curve_csv_rows(a.pooled) == curve_csv_rows(b.pooled));
    CHECK(a.per_start_rho == b.per_start_rho);
}

TEST_CASE("sample_starts") {
    const auto small = generate(gen::Complete{20});
    CHECK(sample_starts(small, 4, 1).size() == 20);
    const auto big = generate(gen::BarabasiAlbert{1000, 2, 1});
    const auto s = sample_starts(big, 32, 5);
    CHECK(s.size() == 32);
    CHECK(std::is_sorted(s.begin(), s.end()));
    CHECK(std::adjacent_find(s.begin(), s.end()) == s.end());
    CHECK(s == sample_starts(big, 32, 5));
    CHECK(s != sample_starts(big, 32, 6));
}

TEST_CASE("complete(4) SRW cover time is 5.5 within 3 standard errors") {
    const auto g = generate(gen::Complete{4});
    EstimateOptions opt;
    opt.trials = 10000;
    opt.seed = 1;
    const double taus[] = {1.0};
    const auto p = estimate_curve(g, strategy::Srw{}, 0, taus, opt).points[0];
    CHECK(std::abs(p.rho - 5.5) <= 3.0 * p.stddev / std::sqrt(10000.0));
}

TEST_CASE("estimate_pct_max") {
    const auto star = generate(gen::Star{6});
    EstimateOptions opt;
    opt.trials = 4000;
    opt.seed = 3;
    const double taus[] = {1.0};
    const NodeId center[] = {0};
    const NodeId leaf[] = {1};
    const NodeId both[] = {0, 1};
    const double c = estimate_pct_max(star, strategy::Srw{}, 1.0, center, opt);
    const double l = estimate_pct_max(star, strategy::Srw{}, 1.0, leaf, opt);
    CHECK(c == estimate_curve(star, strategy::Srw{}, 0, taus, opt).points[0].rho);
    CHECK(l < c);
    CHECK(estimate_pct_max(star, strategy::Srw{}, 1.0, both, opt) == std::max(c, l));
    // From the center the first move reaches a leaf; from a leaf it reaches the
    // center, which then costs one move less to leave.
    CHECK(oracle_pct(star, strategy::Srw{}, 1, 1.0) == doctest::Approx(oracle_pct(star, strategy::Srw{}, 0, 1.0) - 1.0));
}

TEST_CASE("estimate_pct_max over all starts matches the oracle maximum") {
    const auto g = generate(gen::Lollipop{4, 3});
    std::vector<NodeId> all(g.order());
    std::iota(all.begin(), all.end(), 0u);
    EstimateOptions opt;
    opt.trials = 10000;
    opt.seed = 5;
    const double taus[] = {1.0};
    double oracle_max = 0.0, worst_se = 0.0, se_at_max = 0.0;
    for (NodeId v : all) {
        const double exact = oracle_pct(g, strategy::Srw{}, v, 1.0);
        const auto p = estimate_curve(g, strategy::Srw{}, v, taus, opt).points[0];
        const double se = p.stddev / std::sqrt(10000.0);
        worst_se = std::max(worst_se, se);
        if (exact > oracle_max) {
            oracle_max = exact;
            se_at_max = se;
        }
    }
    const double mc = estimate_pct_max(g, strategy::Srw{}, 1.0, all, opt);
    CHECK(mc >= oracle_max - 3.0 * se_at_max);
    CHECK(mc <= oracle_max + 3.0 * worst_se);
}

TEST_CASE("all trials truncated is an error") {
    const auto g = generate(gen::Path{30});
    EstimateOptions opt;
    opt.trials = 3;
    opt.step_cap = 5;
    const double taus[] = {1.0};
    CHECK_THROWS_AS(estimate_curve(g, strategy::Srw{}, 0, taus, opt), EstimateError);
}

TEST_CASE("check_bounds") {
    const auto k4 = generate(gen::Complete{4});
    const auto r = check_bounds(k4, 5.5);
    CHECK(r.upper_bound == 48.0);
    CHECK(r.upper == BoundVerdict::pass);
    CHECK(r.lower == BoundVerdict::pass);
    CHECK(r.near_lower);
    CHECK(check_bounds(k4, 60.0).upper == BoundVerdict::investigate);
    CHECK(check_bounds(k4, 2.0).lower == BoundVerdict::investigate);
    const auto t = check_bounds(k4, 5.5, true);
    CHECK(t.upper == BoundVerdict::inconclusive);
    CHECK(t.lower == BoundVerdict::inconclusive);
    CHECK(std::string(to_string(BoundVerdict::investigate)) == "investigate");
}

TEST_CASE("curve CSV layout") {
    const auto g = generate(gen::Complete{8});
    EstimateOptions opt;
    opt.trials = 3;
    const auto taus = make_tau_grid(0.1, 0.3, 0.1);
    const auto c = estimate_curve(g, strategy::MinDegree{5}, 0, taus, opt);
    CHECK(curve_csv_header() == "strategy,tau,rho,c_tau,stddev,trials,n,m,truncated\n");
    const auto rows = curve_csv_rows(c);
    CHECK(std::count(rows.begin(), rows.end(), '\n') == 3);
    CHECK(rows.rfind("md:B=5,0.1000,0.000000,0.00000000,0.000000,3,8,28,0\n", 0) == 0);
}
