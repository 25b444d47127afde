#include <doctest.h>

#include <algorithm>

#include "k3lat/constructions.hpp"
#include "k3lat/criteria.hpp"
#include "k3lat/sublattice.hpp"
#include "support/random.hpp"

using namespace k3lat;
using k3test::Rng;

namespace {

Lattice t_a() { return double_cover_base(); }

const Lattice& lambda0_lattice() {
  static const Lattice l = make_named("Lambda0");
  return l;
}

SublatticeEmbedding lambda0_rows(const std::vector<std::vector<std::size_t>>& supports) {
  RatMatrix rows(supports.size(), lambda0::kRank);
  for (std::size_t i = 0; i < supports.size(); ++i)
    for (auto c : supports[i]) rows(i, c) = 1;
  return embed(lambda0_lattice(), rows);
}

SublatticeEmbedding u3_rows(const std::vector<std::vector<long>>& rows) {
  std::vector<RatVector> r;
  for (const auto& row : rows) {
    RatVector v;
    for (auto x : row) v.emplace_back(x);
    r.push_back(v);
  }
  return embed(hyperbolic(3), RatMatrix::from_rows(r, 6));
}

Lattice u_plus(const RatVector& diag) { return direct_sum(hyperbolic_plane(), Lattice::diagonal(diag)); }

Lattice random_even(Rng& rng, std::size_t rank, long bound) { return k3test::random_even_form(rng, rank, bound); }

bool fits_u3(const Lattice& l) {
  auto sig = signature(l);
  return sig.positive <= 3 && sig.negative <= 3;
}

}  // namespace

TEST_SUITE("criteria") {
  TEST_CASE("fingerprints") {
    auto f = fingerprint(hyperbolic(3));
    CHECK(f.rank == 6);
    CHECK(f.det == -1);
    CHECK(f.even);
    CHECK(f.discriminant.empty());
    CHECK(to_string(fingerprint(hyperbolic_plane())) ==
          "rank 2, det -1, sig (1,1), even, disc [], rank 2, det_class -1, sig (1,1), hasse []");
    CHECK_FALSE(fingerprint(hyperbolic_plane()) == fingerprint(Lattice::diagonal({1, -1})));
  }

  TEST_CASE("quotient of known sublattices") {
    auto plane = nikulin_quotient(lambda0_rows({{lambda0::e(1)}, {lambda0::f(1)}}));
    CHECK(plane.quotient.gram() == scale(hyperbolic_plane(), 2).gram());
    CHECK(plane.source_in_quotient);
    CHECK(plane.double_in_source);
    CHECK_FALSE(plane.intersection_is_half);

    auto root = nikulin_quotient(lambda0_rows({{lambda0::v(1)}}));
    CHECK(root.quotient.gram() == Lattice::diagonal({-2}).gram());
    CHECK(root.intersection_is_half);

    auto l = nikulin_quotient(embed(lambda0_lattice(), to_rational(u2_cube_rows())));
    CHECK(fingerprint(l.quotient) == fingerprint(hyperbolic(3)));
    CHECK(l.intersection_is_half);
  }

  TEST_CASE("quotient rejects bad input") {
    RatMatrix twice(1, lambda0::kRank);
    twice(0, lambda0::e(1)) = 2;
    CHECK_THROWS_AS(nikulin_quotient(embed(lambda0_lattice(), twice)), Error);
    CHECK_THROWS_AS(nikulin_quotient(embed(hyperbolic(3), RatMatrix{{1, 0, 0, 0, 0, 0}})), Error);
  }

  TEST_CASE("quotient chain on random primitive sublattices") {
    Rng rng(60);
    for (int t = 0; t < 15; ++t) {
      auto s = k3test::random_primitive_sublattice(rng, lambda0_lattice(), static_cast<std::size_t>(rng.uniform(1, 4)), 3);
      auto r = nikulin_quotient(s);
      CHECK(r.source_in_quotient);
      CHECK(r.double_in_source);
      CHECK(r.quotient.rank() == s.rank());
    }
  }

  TEST_CASE("the fixed isometry from U(2)^3") {
    IntMatrix m = u2_cube_isometry();
    RatMatrix g = gram_of(to_rational(m), lambda0_lattice().gram());
    CHECK(g == scale(hyperbolic(3), 2).gram());
  }

  TEST_CASE("sandwich of a hyperbolic summand") {
    auto image = sandwich_embedding(u3_rows({{1, 0, 0, 0, 0, 0}, {0, 1, 0, 0, 0, 0}}));
    IntMatrix m = u2_cube_isometry();
    CHECK(image.coords() == select_rows(to_rational(m), {0, 1}));
    CHECK(image.gram() == scale(hyperbolic_plane(), 2).gram());
    CHECK(same_lattice(intersect_with_scaled_dual(image, 2), image));
    CHECK_THROWS_AS(sandwich_embedding(u3_rows({{2, 0, 0, 0, 0, 0}})), Error);
    CHECK_THROWS_AS(sandwich_embedding(whole(lambda0_lattice())), Error);
  }

  TEST_CASE("sandwich round trip") {
    Rng rng(61);
    for (int t = 0; t < 8; ++t) {
      auto s = k3test::random_primitive_sublattice(rng, hyperbolic(3), static_cast<std::size_t>(rng.uniform(1, 4)), 3);
      auto image = sandwich_embedding(s);
      CHECK(is_primitive(image));
      CHECK(image.gram() == scale(s.lattice(), 2).gram());
      CHECK(same_lattice(intersect_with_scaled_dual(image, 2), image));
      CHECK(fingerprint(nikulin_quotient(image).quotient) == fingerprint(s.lattice()));
    }
  }

  TEST_CASE("bounded isotropic search") {
    auto u = find_isotropic(hyperbolic_plane());
    REQUIRE(u.vector);
    CHECK(*u.vector == IntVector{1, 0});
    CHECK(u.tag == "found");
    auto d = find_isotropic(Lattice::diagonal({2, -8}));
    REQUIRE(d.vector);
    CHECK(*d.vector == IntVector{2, 1});
    CHECK(find_isotropic(make_named("E8")).tag == "anisotropic-by-signature");
    CHECK(find_isotropic(Lattice::diagonal({2, -4, -6, 12})).tag == "anisotropic");
    auto far = find_isotropic(Lattice::diagonal({1, -49}), SearchBudget{3, 1000});
    CHECK(far.tag == "budget-exhausted");
    CHECK(find_isotropic(Lattice::diagonal({1, -49}), SearchBudget{7, 1000}).vector.has_value());
    CHECK_THROWS_AS(find_isotropic(hyperbolic_plane(), SearchBudget{0, 10}), Error);
  }

  TEST_CASE("bounded isotropic search returns primitive null vectors") {
    Rng rng(62);
    for (int t = 0; t < 40; ++t) {
      Lattice l = random_even(rng, static_cast<std::size_t>(rng.uniform(2, 4)), 8);
      auto r = find_isotropic(l, SearchBudget{4, 100000});
      if (r.vector) CHECK(check_isotropic(l, *r.vector));
      if (r.tag == "anisotropic" || r.tag == "anisotropic-by-signature") CHECK_FALSE(is_isotropic(l));
    }
  }

  TEST_CASE("maximal even overlattices") {
    auto u = maximal_even_overlattice(hyperbolic_plane());
    CHECK(u.coords() == RatMatrix::identity(2));
    auto u2 = maximal_even_overlattice(scale(hyperbolic_plane(), 2));
    CHECK(u2.lattice().is_even());
    CHECK(determinant(u2.lattice()) == -1);
    CHECK_THROWS_AS(maximal_even_overlattice(Lattice::diagonal({1, -1})), Error);

    Rng rng(63);
    for (int t = 0; t < 40; ++t) {
      Lattice l = random_even(rng, static_cast<std::size_t>(rng.uniform(1, 5)), 10);
      auto over = maximal_even_overlattice(l);
      Lattice m = over.lattice();
      CHECK(m.is_even());
      Rational ratio = determinant(l) / determinant(m);
      CHECK(is_integer(ratio));
      CHECK(is_perfect_square(ratio.get_num()));
      CHECK(contains(over, whole(l)));
      CHECK(maximal_even_overlattice(m).coords() == RatMatrix::identity(m.rank()));
    }
  }

  TEST_CASE("hyperbolic splitting") {
    auto s = split_hyperbolic(u_plus({-2}), {1, 0, 0});
    CHECK(s.w == IntVector{0, 1, 0});
    CHECK(s.complement.gram() == Lattice::diagonal({-2}).gram());

    Lattice l = hyperbolic(3);
    for (int step = 0; step < 3; ++step) {
      IntVector v(l.rank(), Integer(0));
      v[0] = 1;
      auto split = split_hyperbolic(l, v);
      CHECK(l.pairing(to_rational(split.v), to_rational(split.w)) == 1);
      CHECK(l.norm(to_rational(split.w)) == 0);
      if (split.complement.rank() == 0) break;
      l = split.complement.lattice();
      CHECK(l.rank() == static_cast<std::size_t>(4 - 2 * step));
      if (!(l.gram()(0, 0) == 0)) break;
    }

    auto over = maximal_even_overlattice(scale(hyperbolic_plane(), 2)).lattice();
    auto v = find_isotropic(over);
    REQUIRE(v.vector);
    CHECK(split_hyperbolic(over, *v.vector).complement.rank() == 0);

    CHECK_THROWS_AS(split_hyperbolic(scale(hyperbolic_plane(), 2), {1, 0}), Error);
    CHECK_THROWS_AS(split_hyperbolic(hyperbolic_plane(), {1, 1}), Error);
  }

  TEST_CASE("embedding into U^3: examples") {
    auto a = embed_in_U3(u_plus({2}));
    CHECK(a.verdict == Verdict::yes);
    REQUIRE(std::holds_alternative<EmbeddingCertificate>(a.certificate));
    CHECK(check_embedding(u_plus({2}), std::get<EmbeddingCertificate>(a.certificate), 3));

    auto b = embed_in_U3(Lattice::diagonal({2, -4, -6, 12}));
    CHECK(b.verdict == Verdict::no);
    CHECK(b.reason == "anisotropic-rank-4");

    CHECK(embed_in_U3(hyperbolic(2)).verdict == Verdict::yes);
    CHECK(embed_in_U3(make_named("E8")).reason == "rank");
    CHECK(embed_in_U3(Lattice::diagonal({-2, -2, -2, -2})).reason == "signature");
    CHECK(embed_in_U3(Lattice::diagonal({1, -1})).reason == "not-even");
  }

  TEST_CASE("embedding into U^3 agrees with the rational test") {
    Rng rng(64);
    int yes = 0;
    for (int t = 0; t < 60; ++t) {
      Lattice l = random_even(rng, static_cast<std::size_t>(rng.uniform(1, 5)), 8);
      auto d = embed_in_U3(l);
      INFO(describe(l));
      CHECK(d.verdict != Verdict::unknown);
      CHECK((d.verdict == Verdict::yes) == embeds_in_hyperbolic(l, 3));
      if (d.verdict == Verdict::yes) {
        ++yes;
        CHECK(check_embedding(l, std::get<EmbeddingCertificate>(d.certificate), 3));
      }
    }
    CHECK(yes > 10);
  }

  TEST_CASE("Kummer dominance") {
    CHECK(kummer_dominance(Lattice::diagonal({2, -4, -6, 12})).verdict == Verdict::no);
    auto ta = kummer_dominance(t_a());
    CHECK(ta.verdict == Verdict::yes);
    CHECK(check_embedding(t_a(), std::get<EmbeddingCertificate>(ta.certificate), 3));
    auto signature_note = [](const Decision& d) {
      return std::any_of(d.notes.begin(), d.notes.end(), [](const std::string& n) { return n.rfind("signature", 0) == 0; });
    };
    CHECK_FALSE(signature_note(ta));
    CHECK(signature_note(kummer_dominance(hyperbolic_plane())));

    Rng rng(65);
    for (int t = 0; t < 60; ++t) {
      Lattice l = random_even(rng, static_cast<std::size_t>(rng.uniform(1, 3)), 12);
      if (!fits_u3(l)) continue;
      auto d = kummer_dominance(l);
      CHECK(d.verdict == Verdict::yes);
      CHECK(check_embedding(l, std::get<EmbeddingCertificate>(d.certificate), 3));
    }
  }

  TEST_CASE("product Kummer dominance") {
    CHECK(product_kummer_dominance(hyperbolic_plane()).verdict == Verdict::yes);
    CHECK(product_kummer_dominance(direct_sum(t_a(), Lattice::diagonal({-2}))).reason == "rank");
    auto d = product_kummer_dominance(t_a());
    CHECK(d.verdict == Verdict::yes);
    CHECK(check_embedding(t_a(), std::get<EmbeddingCertificate>(d.certificate), 2));

    Rng rng(66);
    for (int t = 0; t < 60; ++t) {
      Lattice l = random_even(rng, 4, 8);
      if (signature(l) != Signature{2, 2}) continue;
      CHECK((product_kummer_dominance(l).verdict == Verdict::yes) == equivalent(l, hyperbolic(2)));
    }
  }

  TEST_CASE("monotonicity") {
    Rng rng(67);
    for (int t = 0; t < 50; ++t) {
      Lattice l = random_even(rng, static_cast<std::size_t>(rng.uniform(1, 5)), 8);
      auto k = kummer_dominance(l);
      if (k.verdict == Verdict::no) CHECK(shioda_inose(l, SearchBudget{3, 20000}).verdict == Verdict::no);
      if (product_kummer_dominance(l).verdict == Verdict::yes) CHECK(k.verdict == Verdict::yes);
    }
  }

  TEST_CASE("Shioda-Inose structures") {
    auto u2 = shioda_inose(hyperbolic(2));
    CHECK(u2.verdict == Verdict::yes);
    CHECK(std::get<EmbeddingCertificate>(u2.certificate).primitive);
    CHECK(shioda_inose(Lattice::diagonal({2, -4, -6, 12})).verdict == Verdict::no);

    auto ta = shioda_inose(t_a());
    CHECK(ta.verdict == Verdict::yes);
    CHECK(check_embedding(t_a(), std::get<EmbeddingCertificate>(ta.certificate), 3));

    auto twice = shioda_inose(scale(t_a(), 2));
    CHECK(twice.verdict == Verdict::no);
    CHECK(twice.reason == "discriminant-length");

    Rng rng(68);
    for (int t = 0; t < 40; ++t) {
      Lattice l = random_even(rng, static_cast<std::size_t>(rng.uniform(1, 3)), 12);
      if (!fits_u3(l)) continue;
      auto d = shioda_inose(l);
      CHECK(d.verdict == Verdict::yes);
      const auto& cert = std::get<EmbeddingCertificate>(d.certificate);
      CHECK(cert.primitive);
      CHECK(check_embedding(l, cert, 3));
    }
  }

  TEST_CASE("Shioda-Inose certificates re-validate") {
    Rng rng(69);
    for (int t = 0; t < 30; ++t) {
      Lattice l = random_even(rng, static_cast<std::size_t>(rng.uniform(4, 5)), 6);
      auto d = shioda_inose(l, SearchBudget{4, 200000});
      if (d.verdict == Verdict::yes) CHECK(check_embedding(l, std::get<EmbeddingCertificate>(d.certificate), 3));
      if (d.verdict == Verdict::unknown) CHECK(d.reason == "budget-exhausted");
      if (!embeds_in_hyperbolic(l, 3)) CHECK(d.verdict == Verdict::no);
    }
  }

  TEST_CASE("hyperbolic bases") {
    Rng rng(70);
    for (int t = 0; t < 20; ++t) {
      const std::size_t k = static_cast<std::size_t>(rng.uniform(1, 3));
      IntMatrix u = random_unimodular(rng, 2 * k, 12);
      Lattice m(gram_of(to_rational(u), hyperbolic(k).gram()));
      IntMatrix p = hyperbolic_basis(m);
      CHECK(gram_of(to_rational(p), m.gram()) == hyperbolic(k).gram());
      CHECK(abs(determinant(p)) == 1);
    }
    CHECK_THROWS(hyperbolic_basis(Lattice::diagonal({2, -2})));
    CHECK_THROWS(hyperbolic_basis(make_named("E8")));
  }

  TEST_CASE("complement candidates cover every discriminant form") {
    Rng rng(71);
    for (int t = 0; t < 60; ++t) {
      Lattice k = random_even(rng, 2, 9);
      const Signature sig = signature(k);
      const Integer d = Rational(abs(determinant(k))).get_num();
      bool found = false;
      long nodes = 0;
      for (const auto& c : complement_candidates(sig, d)) {
        CHECK(signature(c) == sig);
        CHECK(Rational(abs(determinant(c))).get_num() == d);
        if (anti_isometry(k, Lattice(Rational(-1) * c.gram()), 1'000'000, nodes)) found = true;
      }
      CHECK_MESSAGE(found, describe(k));
    }
  }

  TEST_CASE("gluing recovers primitive sublattices of U^3") {
    Rng rng(72);
    const Lattice u3 = hyperbolic(3);
    for (int t = 0; t < 40; ++t) {
      const std::size_t r = static_cast<std::size_t>(rng.uniform(4, 6));
      SublatticeEmbedding s = k3test::random_primitive_sublattice(rng, u3, r, 3);
      Lattice l = s.lattice();
      Decision d = primitive_embedding_by_gluing(l);
      REQUIRE_MESSAGE(d.verdict == Verdict::yes, describe(l));
      const auto& cert = std::get<EmbeddingCertificate>(d.certificate);
      CHECK(cert.primitive);
      CHECK(check_embedding(l, cert, 3));
    }
  }

  TEST_CASE("gluing rejects lattices without a complement") {
    const Lattice r4(RatMatrix{{2, 1, 0, 0}, {1, -4, 0, 0}, {0, 0, 6, 0}, {0, 0, 0, -10}});
    CHECK(embeds_in_hyperbolic(r4, 3));
    Decision d = shioda_inose(r4);
    CHECK(d.verdict == Verdict::no);
    CHECK(d.reason == "no-complement");
    CHECK(primitive_embedding_by_gluing(Lattice::diagonal({2, 2, -2, -2, 2, -2})).reason == "no-complement");
  }

  TEST_CASE("isogeny scale") {
    auto six = isogeny_scale(Lattice::diagonal({2}), Lattice::diagonal({12}));
    CHECK(six.verdict == Verdict::yes);
    CHECK(std::get<ScaleCertificate>(six.certificate).n == 6);
    auto four = isogeny_scale(t_a(), scale(t_a(), 4));
    CHECK(four.verdict == Verdict::yes);
    CHECK(std::get<ScaleCertificate>(four.certificate).n == 1);
    CHECK(isogeny_scale(Lattice::diagonal({2}), Lattice::diagonal({-2})).verdict == Verdict::no);
    CHECK(isogeny_scale(hyperbolic_plane(), t_a()).reason == "rank");

    Rng rng(70);
    for (int t = 0; t < 40; ++t) {
      std::size_t n = static_cast<std::size_t>(rng.uniform(1, 4));
      Lattice tx = k3test::random_form(rng, n, 8);
      Lattice ta = rng.uniform(0, 1) ? scale(tx, rng.uniform(1, 20)) : k3test::random_form(rng, n, 8);
      auto d = isogeny_scale(tx, ta);
      long m = rng.uniform(1, 30);
      CHECK(isogeny_scale(tx, scale(ta, m)).verdict == d.verdict);
      if (d.verdict == Verdict::yes) CHECK(check_scale(tx, ta, std::get<ScaleCertificate>(d.certificate)));
    }
  }

  TEST_CASE("double quotient obstruction") {
    auto ta2 = double_quotient_obstruction(scale(t_a(), 2));
    CHECK(ta2.obstructed);
    CHECK(ta2.reason == "2-length-obstruction");
    CHECK(ta2.two_length == 4);
    CHECK(ta2.bound == 2);
    auto uu = double_quotient_obstruction(hyperbolic(2));
    CHECK_FALSE(uu.obstructed);
    CHECK(uu.reason == "pairings-not-even");
    auto u2 = double_quotient_obstruction(scale(hyperbolic_plane(), 2));
    CHECK_FALSE(u2.obstructed);
    CHECK(u2.reason == "2-length-within-bound");
    CHECK_THROWS_AS(double_quotient_obstruction(Lattice::diagonal({1})), Error);
  }

  TEST_CASE("certificate checkers reject tampering") {
    auto d = embed_in_U3(u_plus({2}));
    auto cert = std::get<EmbeddingCertificate>(d.certificate);
    CHECK(check_embedding(u_plus({2}), cert, 3));
    CHECK_FALSE(check_embedding(u_plus({4}), cert, 3));
    CHECK_FALSE(check_embedding(u_plus({2}), cert, 2));
    RatMatrix doubled = Rational(2) * cert.image.coords();
    EmbeddingCertificate scaled{embed(hyperbolic(3), doubled), true};
    CHECK_FALSE(check_embedding(scale(u_plus({2}), 4), scaled, 3));
    scaled.primitive = false;
    CHECK(check_embedding(scale(u_plus({2}), 4), scaled, 3));

    CHECK(check_isotropic(hyperbolic_plane(), {0, 1}));
    CHECK_FALSE(check_isotropic(hyperbolic_plane(), {1, 1}));
    CHECK_FALSE(check_isotropic(hyperbolic_plane(), {0, 2}));
    CHECK_FALSE(check_isotropic(hyperbolic_plane(), {0, 0}));

    auto s = similar_scale(Lattice::diagonal({2}), Lattice::diagonal({3}));
    REQUIRE(s);
    CHECK(check_scale(Lattice::diagonal({2}), Lattice::diagonal({3}), *s));
    auto bad = *s;
    bad.n = 5;
    CHECK_FALSE(check_scale(Lattice::diagonal({2}), Lattice::diagonal({3}), bad));
  }
}
