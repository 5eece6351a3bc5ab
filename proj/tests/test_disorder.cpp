#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "spinchain/chain_profiles.hpp"
#include "spinchain/disorder.hpp"
#include "spinchain/errors.hpp"
#include "spinchain/philox.hpp"

using namespace spinchain;
using doctest::Approx;

TEST_CASE("Philox4x32-10 known-answer vectors") {
  using P = Philox4x32;
  CHECK(P::block({0, 0, 0, 0}, {0, 0}) == P::Counter{0x6627e8d5, 0xe169c58d, 0xbc57ac4c, 0x9b00dbd8});
  CHECK(P::block({0xffffffff, 0xffffffff, 0xffffffff, 0xffffffff}, {0xffffffff, 0xffffffff}) ==
        P::Counter{0x408f276d, 0x41c83b0e, 0xa20bc7c6, 0x6d5451fd});
  CHECK(P::block({0x243f6a88, 0x85a308d3, 0x13198a2e, 0x03707344}, {0xa4093822, 0x299f31d0}) ==
        P::Counter{0xd16cfe09, 0x94fdcceb, 0x5001e420, 0x24126ea1});
  static_assert(P::block({0, 0, 0, 0}, {0, 0})[0] == 0x6627e8d5);
}

TEST_CASE("keyed uniforms lie in [0, 1) and depend on every key part") {
  for (std::uint32_t i = 0; i < 1000; ++i) {
    const double u = keyed_uniform(7, 3, i);
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
  }
  CHECK(keyed_uniform(1, 2, 3) != keyed_uniform(2, 2, 3));
  CHECK(keyed_uniform(1, 2, 3) != keyed_uniform(1, 3, 3));
  CHECK(keyed_uniform(1, 2, 3) != keyed_uniform(1, 2, 4));
  CHECK(keyed_uniform(1, std::uint64_t{1} << 32, 3) != keyed_uniform(1, 0, 3));
  CHECK(mix64(0) != mix64(1));
}

TEST_CASE("disorder model names") {
  CHECK(to_string(DisorderModel::rsd) == "RSD");
  CHECK(to_string(DisorderModel::asd) == "ASD");
  CHECK(parse_disorder_model("rsd") == DisorderModel::rsd);
  CHECK(parse_disorder_model("ASD") == DisorderModel::asd);
  CHECK_THROWS_AS(parse_disorder_model("gaussian"), DomainError);
}

TEST_CASE("draws are uniform on [-eps, eps]") {
  const DisorderSpec spec{DisorderModel::rsd, 0.3, {}, 2024};
  std::vector<double> u;
  u.reserve(100000);
  for (std::uint64_t r = 0; r < 1000; ++r) {
    for (int i = 2; i < 102; ++i) u.push_back(disorder_draw(spec, r, i));
  }
  std::sort(u.begin(), u.end());
  CHECK(u.front() >= -0.3);
  CHECK(u.back() < 0.3);
  double d = 0.0;
  const double n = static_cast<double>(u.size());
  for (std::size_t k = 0; k < u.size(); ++k) {
    const double cdf = (u[k] + 0.3) / 0.6;
    d = std::max({d, std::abs(cdf - k / n), std::abs((k + 1) / n - cdf)});
  }
  CHECK(d < 1.63 / std::sqrt(n));
}

TEST_CASE("perturbation layout") {
  const CouplingProfile p = pst_linear_profile(12);
  const DisorderSpec spec{DisorderModel::rsd, 0.1, {}, 5};

  CHECK(spec.range_for(12).first == 2);
  CHECK(spec.range_for(12).last == 10);
  const CouplingProfile q = perturb(p, spec, 3);
  CHECK(q.kind() == ProfileKind::custom);
  CHECK(q.coupling(1) == p.coupling(1));
  CHECK(q.coupling(11) == p.coupling(11));
  for (int i = 2; i <= 10; ++i) {
    CHECK(q.coupling(i) == p.coupling(i) + p.coupling(i) * disorder_draw(spec, 3, i));
    CHECK(std::abs(q.coupling(i) / p.coupling(i) - 1.0) <= 0.1);
  }

  const DisorderSpec asd{DisorderModel::asd, 0.1, {}, 5};
  const CouplingProfile a = perturb(p, asd, 3);
  for (int i = 2; i <= 10; ++i) CHECK(a.coupling(i) == p.coupling(i) + disorder_draw(asd, 3, i));

  DisorderSpec all = spec;
  all.perturbed_range = CouplingRange{1, 11};
  const CouplingProfile b = perturb(p, all, 3);
  CHECK(b.coupling(1) != p.coupling(1));
  CHECK(b.coupling(5) == q.coupling(5));

  all.perturbed_range = CouplingRange{0, 11};
  CHECK_THROWS_AS(perturb(p, all, 0), DomainError);
  all.perturbed_range = CouplingRange{1, 12};
  CHECK_THROWS_AS(perturb(p, all, 0), DomainError);
  CHECK_THROWS_AS(perturb(p, DisorderSpec{DisorderModel::rsd, -0.1, {}, 0}, 0), DomainError);
}

TEST_CASE("zero disorder is the identity") {
  const CouplingProfile p = pst_quadratic_profile(31);
  const CouplingProfile q = perturb(p, DisorderSpec{DisorderModel::asd, 0.0, {}, 1}, 17);
  CHECK(std::equal(p.couplings().begin(), p.couplings().end(), q.couplings().begin()));
}

TEST_CASE("RSD and ASD coincide when every perturbed coupling equals J_max") {
  const CouplingProfile p = alpha_boundary_profile(40, 0.3);
  for (std::uint64_t r = 0; r < 20; ++r) {
    const CouplingProfile a = perturb(p, DisorderSpec{DisorderModel::rsd, 0.2, {}, 77}, r);
    const CouplingProfile b = perturb(p, DisorderSpec{DisorderModel::asd, 0.2, {}, 77}, r);
    CHECK(a == b);
  }
  const EnsembleResult er = ensemble_fidelity(p, DisorderSpec{DisorderModel::rsd, 0.05, {}, 3}, 20.0, 50);
  const EnsembleResult ea = ensemble_fidelity(p, DisorderSpec{DisorderModel::asd, 0.05, {}, 3}, 20.0, 50);
  CHECK(er.mean_F == ea.mean_F);
}

TEST_CASE("absolute disorder can overwhelm the weak end couplings of the quadratic chain") {
  const CouplingProfile p = pst_quadratic_profile(201);
  const DisorderSpec spec{DisorderModel::asd, 0.1, {}, 12345};
  int overwhelmed = 0;
  for (std::uint64_t r = 0; r < 20; ++r) {
    const CouplingProfile q = perturb(p, spec, r);
    if (std::abs(q.coupling(2) - p.coupling(2)) > p.coupling(2)) ++overwhelmed;
  }
  CHECK(p.coupling(2) < 0.01);
  CHECK(overwhelmed > 10);
}

TEST_CASE("perturbation is a pure function of its key") {
  const CouplingProfile p = pst_linear_profile(60);
  const DisorderSpec spec{DisorderModel::rsd, 0.05, {}, 999};
  const CouplingProfile first = perturb(p, spec, 41);
  for (std::uint64_t r = 40; r > 0; --r) (void)perturb(p, spec, r);
  CHECK(perturb(p, spec, 41) == first);
  CHECK(perturb(p, DisorderSpec{DisorderModel::rsd, 0.05, {}, 1000}, 41) != first);
}

TEST_CASE("ensemble fidelity") {
  const CouplingProfile lin = pst_linear_profile(50);
  const double tau = std::numbers::pi * 50 / 4;
  const EnsembleResult clean = ensemble_fidelity(lin, DisorderSpec{DisorderModel::rsd, 0.0, {}, 1}, tau, 20);
  CHECK(clean.mean_F == Approx(1.0).epsilon(1e-8));
  CHECK(clean.mean_f == Approx(1.0).epsilon(1e-8));
  CHECK(clean.stderr_F == 0.0);
  CHECK(clean.per_realization_F.empty());

  const DisorderSpec spec{DisorderModel::asd, 0.1, {}, 8};
  const EnsembleResult serial = ensemble_fidelity(lin, spec, tau, 64, {1, true});
  const EnsembleResult threaded = ensemble_fidelity(lin, spec, tau, 64, {4, true});
  CHECK(serial.mean_F == threaded.mean_F);
  CHECK(serial.stderr_F == threaded.stderr_F);
  CHECK(serial.per_realization_F == threaded.per_realization_F);
  CHECK(serial.per_realization_F.size() == 64);
  CHECK(serial.mean_F >= 0.5);
  CHECK(serial.mean_F <= 1.0);
  CHECK(serial.stderr_F > 0.0);

  CHECK_THROWS_AS(ensemble_fidelity(lin, spec, 0.0, 10), DomainError);
  CHECK_THROWS_AS(ensemble_fidelity(lin, spec, tau, 0), DomainError);
}

TEST_CASE("relative disorder is milder than absolute disorder on the linear chain") {
  const CouplingProfile lin = pst_linear_profile(200);
  const double tau = 50 * std::numbers::pi;
  const EnsembleResult r = ensemble_fidelity(lin, DisorderSpec{DisorderModel::rsd, 0.02, {}, 12345}, tau, 200);
  const EnsembleResult a = ensemble_fidelity(lin, DisorderSpec{DisorderModel::asd, 0.02, {}, 12345}, tau, 200);
  CHECK(r.mean_F > a.mean_F);
}

TEST_CASE("mean fidelity falls with disorder strength") {
  for (const CouplingProfile& p : {pst_linear_profile(60), alpha_boundary_profile(60, 0.5)}) {
    const double tau = p.kind() == ProfileKind::pst_linear ? 15 * std::numbers::pi : 0.0;
    double readout = tau;
    if (readout == 0.0) {
      // Coarse first-arrival peak of the unperturbed boundary-controlled chain.
      double best = 0.0;
      for (double t = 15.0; t < 45.0; t += 0.01) {
        const EnsembleResult e = ensemble_fidelity(p, DisorderSpec{DisorderModel::rsd, 0.0, {}, 0}, t, 1);
        if (e.mean_F > best) {
          best = e.mean_F;
          readout = t;
        }
      }
    }
    EnsembleResult prev = ensemble_fidelity(p, DisorderSpec{DisorderModel::rsd, 0.0, {}, 4}, readout, 100);
    for (double eps : {0.01, 0.03, 0.1, 0.3}) {
      const EnsembleResult cur = ensemble_fidelity(p, DisorderSpec{DisorderModel::rsd, eps, {}, 4}, readout, 100);
      CHECK(cur.mean_F <= prev.mean_F + 2.0 * std::hypot(cur.stderr_F, prev.stderr_F));
      prev = cur;
    }
  }
}
