#include "support.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace kstab;
using namespace testsupport;

namespace {

PointConfiguration coordinate_points(const Rat& w) {
    return make_config(2, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}, std::vector<Rat>(3, w));
}

PointConfiguration collinear_points(int k, const Rat& w) {
    std::vector<std::vector<Rat>> pts;
    pts.push_back({1, 0, 0});
    pts.push_back({0, 1, 0});
    for (int i = 1; i <= k - 2; ++i) pts.push_back({Rat(1), Rat(i), Rat(0)});
    return make_config(2, pts, std::vector<Rat>(k, w));
}

}  // namespace

TEST_CASE("dualize reads points as covectors and merges repeats") {
    {
        const Arrangement a = dualize(coordinate_points(make_rat(2, 3)));
        CHECK(a.hyperplanes == triangle(make_rat(2, 3)).hyperplanes);
        CHECK(a.weights == std::vector<Rat>(3, make_rat(2, 3)));
    }
    {
        const PointConfiguration two_copies =
            make_config(2, {{1, 2, 3}, {2, 4, 6}}, {make_rat(1, 4), make_rat(1, 4)});
        const Arrangement a = dualize(two_copies);
        CHECK(a.size() == 1);
        CHECK(a.weights[0] == make_rat(1, 2));
    }
    {
        // arrangement -> configuration -> arrangement is the identity on
        // merged data
        const Arrangement a = four_generic(make_rat(1, 4));
        const Arrangement b = dualize(dual_configuration(a));
        CHECK(a.hyperplanes == b.hyperplanes);
        CHECK(a.weights == b.weights);
    }
}

TEST_CASE("hm_check fixtures") {
    {
        const HmResult r = hm_check(coordinate_points(make_rat(2, 3)));
        CHECK(r.semistable);
        CHECK(!r.stable);
        REQUIRE(r.witness);
        CHECK(r.witness->dim == 0);  // equality already at single points
        CHECK(r.witness->points == std::vector<int>{0});
    }
    {
        const HmResult r = hm_check(collinear_points(4, make_rat(1, 3)));
        CHECK(!r.semistable);
        CHECK(!r.stable);
        REQUIRE(r.witness);
        CHECK(r.witness->dim == 1);  // the common line is the violation
        CHECK(r.witness->points == std::vector<int>{0, 1, 2, 3});
    }
    {
        const HmResult r = hm_check(dual_configuration(four_generic(make_rat(1, 4))));
        CHECK(r.semistable);
        CHECK(r.stable);
        CHECK(!r.witness);
    }
    CHECK_THROWS_AS(hm_check(PointConfiguration{2, {}, {}}), std::invalid_argument);
}

TEST_CASE("git_classify goes through the duality bridge") {
    CHECK(git_classify(coordinate_points(make_rat(2, 3))).verdict ==
          Verdict::PolystableNotKStable);
    CHECK(git_classify(collinear_points(4, make_rat(1, 3))).verdict == Verdict::Unstable);
    CHECK(git_classify(dual_configuration(four_generic(make_rat(1, 4)))).verdict ==
          Verdict::UniformlyKStable);
    // scale-free GIT check vs scale-bound classification
    CHECK(git_classify(coordinate_points(make_rat(3, 2))).verdict == Verdict::NotLogFano);
    CHECK(hm_check(coordinate_points(make_rat(3, 2))).semistable);
}

TEST_CASE("duality coherence on random log Fano arrangements") {
    Rng rng(13579);
    for (int iter = 0; iter < 30; ++iter) {
        const int n = static_cast<int>(rng.range(1, 3));
        const int m = static_cast<int>(rng.range(2, 7));
        const Arrangement a = random_log_fano(rng, n, m, iter % 2 == 0);
        const Classification c = classify(a);
        const HmResult r = hm_check(dual_configuration(a));
        CHECK(r.semistable == (c.verdict != Verdict::Unstable));
        CHECK(r.stable == (c.verdict == Verdict::UniformlyKStable));
    }
}

TEST_CASE("splitting a point into coincident copies changes nothing") {
    Rng rng(2468);
    for (int iter = 0; iter < 12; ++iter) {
        const Arrangement a = random_log_fano(rng, 2, static_cast<int>(rng.range(3, 6)),
                                              iter % 2 == 0);
        const PointConfiguration pc = dual_configuration(a);
        PointConfiguration split;
        split.dim = pc.dim;
        const int target = static_cast<int>(rng.range(0, pc.size() - 1));
        for (int i = 0; i < pc.size(); ++i) {
            if (i == target) {
                split.points.push_back(pc.points[i]);
                split.weights.push_back(pc.weights[i] / 3);
                split.points.push_back(pc.points[i]);
                split.weights.push_back(pc.weights[i] * 2 / 3);
            } else {
                split.points.push_back(pc.points[i]);
                split.weights.push_back(pc.weights[i]);
            }
        }
        const HmResult r0 = hm_check(pc);
        const HmResult r1 = hm_check(split);
        CHECK(r0.semistable == r1.semistable);
        CHECK(r0.stable == r1.stable);
        CHECK(r0.witness.has_value() == r1.witness.has_value());
        if (r0.witness && r1.witness) {
            CHECK(r0.witness->dim == r1.witness->dim);
            CHECK(r0.witness->basis == r1.witness->basis);
        }
        CHECK(git_classify(pc).verdict == git_classify(split).verdict);
    }
}

TEST_CASE("hm_check is a projective invariant") {
    Rng rng(97531);
    for (int iter = 0; iter < 10; ++iter) {
        const Arrangement a = random_log_fano(rng, 2, 5, iter % 2 == 0);
        const Arrangement b = apply_coordinates(a, random_invertible(rng, a.dim + 1));
        const HmResult ra = hm_check(dual_configuration(a));
        const HmResult rb = hm_check(dual_configuration(b));
        CHECK(ra.semistable == rb.semistable);
        CHECK(ra.stable == rb.stable);
        if (ra.witness && rb.witness) {
            CHECK(ra.witness->dim == rb.witness->dim);
            CHECK(ra.witness->points == rb.witness->points);
        }
    }
}
