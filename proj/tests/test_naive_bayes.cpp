#include <doctest.h>

#include <cmath>
#include <vector>

#include "patentcite/error.hpp"
#include "patentcite/naive_bayes.hpp"
#include "test_util.hpp"

using namespace patentcite;
using testutil::fixture_dataset;
using testutil::make_dataset;

namespace {

// Direct-space Gaussian density, used to rebuild the posterior without the
// log-sum-exp path the library takes.
double gaussian_pdf(double x, double mean, double var) {
    return std::exp(-(x - mean) * (x - mean) / (2.0 * var)) / std::sqrt(2.0 * M_PI * var);
}

} // namespace

TEST_CASE("fitted priors, means and variances are the population statistics") {
    auto ds = make_dataset({"a"}, {{1}, {3}, {0}, {0}}, {1, 1, 1, 0});
    auto model = fit_naive_bayes(ds, NBConfig{});

    CHECK(model.class_priors[0] == 0.25);
    CHECK(model.class_priors[1] == 0.75);

    // class 1 feature values 1, 3, 0 in log1p space
    const double ln2 = std::log1p(1.0), ln4 = std::log1p(3.0);
    const double mean1 = (ln2 + ln4 + 0.0) / 3.0;
    CHECK(model.means[1][0] == doctest::Approx(mean1).epsilon(1e-12));
    const double var1 = ((ln2 - mean1) * (ln2 - mean1) + (ln4 - mean1) * (ln4 - mean1) +
                         mean1 * mean1) /
                        3.0;
    CHECK(model.variances[1][0] == doctest::Approx(var1).epsilon(1e-12));
}

TEST_CASE("two-row classes give the simplest closed-form statistics") {
    auto ds = make_dataset({"a"}, {{1}, {3}, {9}, {19}}, {0, 0, 1, 1});
    auto model = fit_naive_bayes(ds, NBConfig{});
    const double ln2 = std::log(2.0);
    CHECK(model.means[0][0] == doctest::Approx(1.5 * ln2).epsilon(1e-12));       // (ln2+ln4)/2
    CHECK(model.variances[0][0] == doctest::Approx(0.25 * ln2 * ln2).epsilon(1e-12));
    CHECK(model.means[1][0] ==
          doctest::Approx(std::log(10.0) + 0.5 * ln2).epsilon(1e-12));  // (ln10+ln20)/2
}

TEST_CASE("constant columns hit the variance floor") {
    auto ds = make_dataset({"a", "b"}, {{5, 1}, {5, 2}, {5, 9}, {5, 4}}, {0, 0, 1, 1});
    auto model = fit_naive_bayes(ds, NBConfig{});
    CHECK(model.variances[0][0] == 1e-9);
    CHECK(model.variances[1][0] == 1e-9);
    CHECK(model.variances[0][1] > 1e-9);

    NBConfig wide;
    wide.variance_floor = 0.5;
    auto floored = fit_naive_bayes(ds, wide);
    CHECK(floored.variances[0][0] == 0.5);
    CHECK(floored.variances[1][1] == 0.5);  // log1p gap of rows 9 and 4 is below 0.5
    CHECK(floored.variance_floor == 0.5);
}

TEST_CASE("posterior is one half at the symmetric midpoint") {
    // both classes have variance 1 in transformed space, means 1 and 3
    const double e = std::exp(1.0);
    auto ds = make_dataset({"a"},
                           {{0.0}, {e * e - 1.0}, {e * e - 1.0}, {e * e * e * e - 1.0}},
                           {0, 0, 1, 1});
    auto model = fit_naive_bayes(ds, NBConfig{});
    CHECK(model.means[0][0] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(model.means[1][0] == doctest::Approx(3.0).epsilon(1e-12));
    CHECK(model.variances[0][0] == doctest::Approx(1.0).epsilon(1e-12));

    const double midpoint = e * e - 1.0;  // transformed value 2
    CHECK(nb_posterior(model, {midpoint}) == doctest::Approx(0.5).epsilon(1e-9));

    SUBCASE("posterior rises monotonically toward the class-1 mean") {
        double previous = 0.0;
        for (double raw : {0.0, 1.0, midpoint, 20.0, 100.0}) {
            const double p = nb_posterior(model, {raw});
            CHECK(p > previous);
            previous = p;
        }
    }
}

TEST_CASE("posteriors match a hand-computed Bayes rule") {
    auto ds = make_dataset({"a", "b"}, {{0, 2}, {1, 3}, {5, 0}, {7, 1}}, {0, 0, 1, 1});
    auto model = fit_naive_bayes(ds, NBConfig{});

    for (const auto& query :
         {std::vector<double>{2, 2}, std::vector<double>{0, 0}, std::vector<double>{6, 1}}) {
        // rebuild the statistics from scratch in the test
        std::array<double, 2> joint = {0.5, 0.5};  // equal priors here
        for (int c = 0; c < 2; ++c) {
            for (std::size_t j = 0; j < 2; ++j) {
                const double v0 = std::log1p(ds.at(c == 0 ? 0 : 2, j));
                const double v1 = std::log1p(ds.at(c == 0 ? 1 : 3, j));
                const double mean = (v0 + v1) / 2.0;
                double var = ((v0 - mean) * (v0 - mean) + (v1 - mean) * (v1 - mean)) / 2.0;
                if (var < 1e-9)
                    var = 1e-9;
                joint[c] *= gaussian_pdf(std::log1p(query[j]), mean, var);
            }
        }
        const double expected = joint[1] / (joint[0] + joint[1]);
        auto posteriors = nb_posteriors(model, query);
        CHECK(posteriors[1] == doctest::Approx(expected).epsilon(1e-9));
        CHECK(posteriors[0] + posteriors[1] == 1.0);
    }
}

TEST_CASE("unbalanced priors shift the posterior") {
    // identical feature distributions, so the posterior equals the prior
    auto ds = make_dataset({"a"}, {{2}, {4}, {2}, {4}, {2}, {4}, {2}, {4}},
                           {0, 0, 1, 1, 1, 1, 1, 1});
    auto model = fit_naive_bayes(ds, NBConfig{});
    CHECK(nb_posterior(model, {3.0}) == doctest::Approx(0.75).epsilon(1e-9));
}

TEST_CASE("posterior stays within the clamp far from both classes") {
    auto ds = make_dataset({"a"}, {{1}, {2}, {100}, {200}}, {0, 0, 1, 1});
    auto model = fit_naive_bayes(ds, NBConfig{});
    const double p = nb_posterior(model, {1e9});
    CHECK(p <= 1.0 - 1e-15);
    CHECK(p >= 0.5);
    const double q = nb_posterior(model, {0.0});
    CHECK(q >= 1e-15);
    CHECK(q <= 0.5);
}

TEST_CASE("fit and score on the corpus fixture") {
    auto ds = fixture_dataset();
    auto model = fit_naive_bayes(ds, NBConfig{});
    CHECK(model.class_priors[1] == doctest::Approx(6.0 / 14.0).epsilon(1e-12));
    int correct = 0;
    for (std::size_t i = 0; i < ds.rows(); ++i) {
        const double p = nb_posterior(model, ds.row(i));
        correct += (p >= 0.5 ? 1 : 0) == ds.labels[i];
    }
    CHECK(correct >= 10);  // separable enough to beat the majority class
}

TEST_CASE("input validation") {
    auto single = make_dataset({"a"}, {{1}, {2}}, {1, 1});
    CHECK_THROWS_WITH_AS(fit_naive_bayes(single, NBConfig{}),
                         "naive Bayes needs at least one row of each class", DataError);

    auto ds = make_dataset({"a", "b"}, {{1, 2}, {3, 4}}, {0, 1});
    auto model = fit_naive_bayes(ds, NBConfig{});
    CHECK_THROWS_AS(nb_posterior(model, {1.0}), DataError);
    CHECK_THROWS_AS(nb_posterior(model, {1.0, 2.0, 3.0}), DataError);
}
