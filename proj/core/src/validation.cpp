// SPDX-License-Identifier: Apache-2.0
//
// iqbeam - least-squares channel estimation and energy beamforming
// under transceiver IQ imbalance
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0

#include "iqbeam/validation.hpp"

#include <cmath>
#include <sstream>

#include "iqbeam/airlink.hpp"
#include "iqbeam/estimators.hpp"
#include "iqbeam/montecarlo.hpp"
#include "iqbeam/precoders.hpp"
#include "iqbeam/rng.hpp"

namespace iqbeam::validation {

namespace {

CVec random_cvec(int n, std::mt19937_64& rng) {
    std::normal_distribution<double> g(0.0, 1.0);
    CVec v(n);
    for (int i = 0; i < n; ++i) v(i) = cplx(g(rng), g(rng));
    return v;
}

CMat random_cmat(int r, int c, std::mt19937_64& rng) {
    std::normal_distribution<double> g(0.0, 1.0);
    CMat m(r, c);
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < c; ++j) m(i, j) = cplx(g(rng), g(rng));
    return m;
}

struct Checker {
    std::vector<CheckResult> results;

    void add(const std::string& name, bool pass, const std::string& detail = "") {
        results.push_back({name, pass, detail});
    }

    void add_max(const std::string& name, double worst, double bound) {
        std::ostringstream os;
        os << "worst " << worst << " vs bound " << bound;
        results.push_back({name, worst <= bound, os.str()});
    }
};

}  // namespace

std::vector<CheckResult> run_all(std::uint64_t seed, double delta) {
    Checker ck;
    std::mt19937_64 rng = make_trial_rng(seed, 0xC0FFEE);
    const IqiDelta idelta = IqiDelta::uniform(delta);

    // embedding round trip and homomorphism
    {
        bool exact = true;
        double worst = 0.0;
        for (int rep = 0; rep < 1000; ++rep) {
            const int n = 1 + static_cast<int>(rng() % 8);
            const CVec u = random_cvec(n, rng);
            const CMat U = random_cmat(n, n, rng);
            const CMat V = random_cmat(n, n, rng);
            if (unembed_vec(embed_vec(u)) != u) exact = false;
            const double e1 = (embed_mat(U) * embed_vec(u) - embed_vec(U * u)).norm() /
                              std::max(1e-300, embed_vec(U * u).norm());
            const double e2 = (embed_mat(U) * embed_mat(V) - embed_mat(U * V)).norm() /
                              std::max(1e-300, embed_mat(U * V).norm());
            worst = std::max({worst, e1, e2});
        }
        ck.add("embedding round trip exact", exact);
        ck.add_max("embedding homomorphism (1000 random, n<=8)", worst, 1e-12);
    }

    // chain coefficient identities, exact in floating point
    {
        bool tx_ok = true, rx_ok = true;
        for (int rep = 0; rep < 1000000; ++rep) {
            const MismatchDraw m =
                draw_mismatch(idelta.delta_g, idelta.delta_phi, idelta.cap_g, idelta.cap_phi, rng);
            const IqiCoeffPair t = tx_coeffs(m);
            const IqiCoeffPair r = rx_coeffs(m);
            if (t.c1 + t.c2 != cplx(1.0, 0.0)) tx_ok = false;
            if (r.c1 + std::conj(r.c2) != cplx(1.0, 0.0)) rx_ok = false;
        }
        ck.add("TX identity c1 + c2 == 1 (1e6 draws)", tx_ok);
        ck.add("RX identity c1 + conj(c2) == 1 (1e6 draws)", rx_ok);
    }

    // mismatch draw range bounds
    {
        bool ok = true;
        for (double d : {0.1, 0.4, 0.5}) {
            for (int rep = 0; rep < 300000; ++rep) {
                const MismatchDraw m = draw_mismatch(d, d, d, d, rng);
                if (m.g < 1.0 - d * (1.0 + d / 2.0) || m.g > 1.0 - d * (1.0 - d / 2.0)) ok = false;
                if (m.phi < d * (1.0 - d / 2.0) || m.phi > d * (1.0 + d / 2.0)) ok = false;
            }
        }
        ck.add("mismatch draws inside stated ranges (delta in {0.1,0.4,0.5})", ok);
    }

    // uplink reconstruction and no-imbalance collapse
    {
        const Pilot pilot = Pilot::from_power(1e-6, 1e-4);
        double worst = 0.0;
        bool collapse = true;
        for (int rep = 0; rep < 2000; ++rep) {
            const IqiProfile prof = make_profile(10, 1, idelta, rng);
            const ChannelRealization ch = draw_channel(10, 1.0, rng);
            const CVec noise = random_cvec(10, rng);
            const UplinkObservation obs = observe_uplink(ch, prof, pilot, noise);
            const double rel =
                (obs.y_J - obs.h_A * pilot.s - obs.h_B * std::conj(pilot.s) - obs.n_J).norm() /
                obs.y_J.norm();
            worst = std::max(worst, rel);

            const IqiProfile ideal = ideal_profile(10, 1);
            const UplinkObservation id = observe_uplink(ch, ideal, pilot, noise);
            if ((id.y_J - (ch.h * pilot.s + noise)).norm() != 0.0) collapse = false;
            if (id.h_B.norm() != 0.0) collapse = false;
        }
        ck.add_max("uplink reconstruction y_J = h_A s + h_B s* + n_J", worst, 1e-15);
        ck.add("no-imbalance uplink collapses to y = h s + n", collapse);
    }

    // impaired noise second moment and mean training SNR
    {
        const int reps = 100000;
        const IqiProfile prof = make_profile(4, 1, idelta, rng);
        RVec acc = RVec::Zero(4);
        for (int rep = 0; rep < reps; ++rep) {
            const CVec n = draw_noise(4, 1.0, rng);
            for (int i = 0; i < 4; ++i) {
                acc(i) += std::norm(prof.rx_source[i].c1 * n(i) +
                                    prof.rx_source[i].c2 * std::conj(n(i)));
            }
        }
        double worst = 0.0;
        for (int i = 0; i < 4; ++i) {
            const double expect =
                std::norm(prof.rx_source[i].c1) + std::norm(prof.rx_source[i].c2);
            worst = std::max(worst, std::abs(acc(i) / reps - expect) / expect);
        }
        ck.add_max("impaired noise second moment (|R1|^2+|R2|^2) sigma^2 within 2%", worst, 0.02);

        const double beta = 6.8e-9, pc = 1e-6, tauc = 1e-4, s1 = 1e-17;
        const Pilot pilot = Pilot::from_power(pc, tauc);
        double mean_snr = 0.0;
        const IqiProfile ideal = ideal_profile(4, 1);
        for (int rep = 0; rep < reps; ++rep) {
            const ChannelRealization ch = draw_channel(4, beta, rng);
            const UplinkObservation obs =
                observe_uplink(ch, ideal, pilot, CVec(CVec::Zero(4)));
            mean_snr += obs.y_J.squaredNorm() / (4.0 * s1);
        }
        mean_snr /= reps;
        const double expect = beta * pc * tauc / s1;
        ck.add_max("mean training SNR equals beta p_c tau_c / sigma1^2 within 2%",
                   std::abs(mean_snr - expect) / expect, 0.02);
    }

    // normal-system identities
    {
        const Pilot pilot = Pilot::from_power(1e-6, 1e-4);
        double worst_zb = 0.0, worst_det = 0.0;
        bool amgm = true;
        for (int rep = 0; rep < 1000000; ++rep) {
            const IqiProfile prof = make_profile(1, 1, idelta, rng);
            const PilotCoupled pc = pilot_coupling(pilot, prof);
            const cplx a = pc.a_diag(0), b = pc.b_diag(0);
            const double za = std::norm(a) + std::norm(b);
            const cplx zb = 2.0 * a * std::conj(b);
            worst_zb = std::max(worst_zb,
                                std::abs(std::abs(zb) - 2.0 * std::abs(a) * std::abs(b)) /
                                    std::max(1e-300, za));
            if (za < std::abs(zb) * (1.0 - 1e-12)) amgm = false;
            const double det = std::norm(zb) - za * za;
            const double ref = std::norm(a) - std::norm(b);
            worst_det =
                std::max(worst_det, std::abs(det + ref * ref) / std::max(1e-300, za * za));
        }
        ck.add_max("|Z_B| == 2|A||B| (1e6 draws)", worst_zb, 1e-12);
        ck.add("Z_A >= |Z_B| (1e6 draws)", amgm);
        ck.add_max("det_i == -(|A_i|^2-|B_i|^2)^2 (1e6 draws)", worst_det, 1e-12);
    }

    // zero-noise exact recovery
    {
        const Pilot pilot = Pilot::from_power(1e-6, 1e-4);
        double worst = 0.0;
        for (int rep = 0; rep < 1000; ++rep) {
            const IqiProfile prof = make_profile(10, 1, idelta, rng);
            const ChannelRealization ch = draw_channel(10, 1.0, rng);
            const UplinkObservation obs =
                observe_uplink(ch, prof, pilot, CVec(CVec::Zero(10)));
            const ChannelEstimate est = lse_optimal(build_normal_system(obs.y_J, pilot, prof));
            worst = std::max(worst, (est.h_hat - ch.h).norm() / ch.h.norm());
        }
        ck.add_max("zero-noise recovery relative error (1e3 draws, N=10)", worst, 1e-9);
    }

    // stationarity of the LS residual at the estimate
    {
        const Pilot pilot = Pilot::from_power(1e-6, 1e-4);
        double worst = 0.0;
        for (int rep = 0; rep < 20; ++rep) {
            const IqiProfile prof = make_profile(4, 1, idelta, rng);
            const ChannelRealization ch = draw_channel(4, 1.0, rng);
            const UplinkObservation obs = observe_uplink(ch, prof, pilot, random_cvec(4, rng));
            const ChannelEstimate est = lse_optimal(build_normal_system(obs.y_J, pilot, prof));
            const double scale = est.h_hat.norm();
            const double step = 1e-6 * scale;
            RVec grad(8);
            for (int d = 0; d < 8; ++d) {
                CVec hp = est.h_hat, hm = est.h_hat;
                const cplx delta_c = d < 4 ? cplx(step, 0.0) : cplx(0.0, step);
                hp(d % 4) += delta_c;
                hm(d % 4) -= delta_c;
                grad(d) = (ls_residual(hp, obs.y_J, pilot, prof) -
                           ls_residual(hm, obs.y_J, pilot, prof)) /
                          (2.0 * step);
            }
            worst = std::max(worst, grad.norm() / obs.y_J.squaredNorm() * scale);
        }
        ck.add_max("LS residual stationary at the optimal estimate", worst, 1e-5);
    }

    // quadratic-form bridge and Z_ab structure
    {
        double worst = 0.0, worst_sym = 0.0, min_eig = 0.0;
        bool rank_ok = true;
        for (int rep = 0; rep < 1000; ++rep) {
            const int k = 1 + static_cast<int>(rng() % 2);
            const int n = 2 + static_cast<int>(rng() % 7);
            const IqiProfile prof = make_profile(n, k, idelta, rng);
            CVec symbols(k);
            for (int u = 0; u < k; ++u) symbols(u) = std::polar(1.0, 0.3 * u);
            const DownlinkCoupling c = downlink_coupling(random_cmat(k, n, rng), prof, symbols);
            const ZabMatrix zab = build_zab(c);
            const CVec x = random_cvec(n, rng);
            const double direct = (c.a * x + c.b * x.conjugate()).squaredNorm();
            const double viaq = quadratic_form(zab.m, embed_vec(x));
            worst = std::max(worst, std::abs(direct - viaq) / std::max(1e-300, direct));
            worst_sym =
                std::max(worst_sym, (zab.m - zab.m.transpose()).norm() / zab.m.norm());
            Eigen::SelfAdjointEigenSolver<RMat> es(zab.m);
            min_eig = std::min(min_eig, es.eigenvalues()(0) / zab.m.norm());
            int nonzero = 0;
            for (int i = 0; i < es.eigenvalues().size(); ++i) {
                if (es.eigenvalues()(i) > 1e-9 * zab.m.norm()) ++nonzero;
            }
            if (nonzero > 4 * k) rank_ok = false;
        }
        ck.add_max("quadratic form equals ||a x + b x*||^2 (1000 pairs)", worst, 1e-9);
        ck.add_max("Z_ab symmetric", worst_sym, 1e-10);
        ck.add("Z_ab positive semidefinite within -1e-9 ||M||", min_eig >= -1e-9);
        ck.add("Z_ab rank <= 4K", rank_ok);
    }

    // eigenpair dominance over random Rayleigh probes
    {
        bool ok = true;
        const int n = 8;
        const IqiProfile prof = make_profile(n, 1, idelta, rng);
        const DownlinkCoupling c =
            downlink_coupling(random_cmat(1, n, rng), prof, CVec::Ones(1));
        const ZabMatrix zab = build_zab(c);
        const EigenPair top = principal_eigenpair(zab.m);
        for (int rep = 0; rep < 1000; ++rep) {
            RVec p(2 * n);
            std::normal_distribution<double> g(0.0, 1.0);
            for (int i = 0; i < 2 * n; ++i) p(i) = g(rng);
            p.normalize();
            if (top.lambda < quadratic_form(zab.m, p) - 1e-9) ok = false;
        }
        ck.add("top eigenvalue dominates 1000 random Rayleigh quotients", ok);
    }

    // no-imbalance reductions
    {
        const Pilot pilot = Pilot::from_power(1e-6, 1e-4);
        const IqiProfile ideal = ideal_profile(6, 1);
        double worst_est = 0.0, worst_pow = 0.0;
        for (int rep = 0; rep < 200; ++rep) {
            const ChannelRealization ch = draw_channel(6, 1.0, rng);
            const UplinkObservation obs =
                observe_uplink(ch, ideal, pilot, random_cvec(6, rng));
            const ChannelEstimate bench = lse_benchmark(obs.y_J, pilot);
            const ChannelEstimate opt = lse_optimal(build_normal_system(obs.y_J, pilot, ideal));
            worst_est =
                std::max(worst_est, (bench.h_hat - opt.h_hat).norm() / bench.h_hat.norm());

            const DownlinkCoupling c =
                downlink_coupling(ch.h.transpose(), ideal, CVec::Ones(1));
            const auto [xo, lam] = optimal_precoder(c, 2.0);
            const PrecoderVec xa = mrt({ch.h, EstimatorKind::Benchmark}, 2.0);
            const double po = received_signal_power(ch.h.transpose(), ideal, xo, CVec::Ones(1));
            const double pa = received_signal_power(ch.h.transpose(), ideal, xa, CVec::Ones(1));
            worst_pow = std::max(worst_pow, std::abs(po - pa) / pa);
        }
        ck.add_max("no-imbalance: optimal estimate equals benchmark estimate", worst_est, 1e-12);
        ck.add_max("no-imbalance: eigen precoder power equals conjugate matching", worst_pow,
                   1e-9);

        // multiuser reduction to the channel Gram matrix
        double worst_mu = 0.0;
        for (int rep = 0; rep < 200; ++rep) {
            const int k = 2 + static_cast<int>(rng() % 2);
            const int n = 4 + static_cast<int>(rng() % 4);
            const CMat h_rows = random_cmat(k, n, rng);
            CVec symbols(k);
            for (int u = 0; u < k; ++u) symbols(u) = std::polar(1.0, 0.7 * u + 0.1);
            const DownlinkCoupling c =
                downlink_coupling(h_rows, ideal_profile(n, k), symbols);
            const auto [xo, lam] = optimal_precoder(c, 1.0);
            const CMat gram = h_rows.adjoint() * h_rows;  // H H^H with columns h_k
            Eigen::SelfAdjointEigenSolver<CMat> es(gram);
            const double lam_ref = es.eigenvalues()(n - 1);
            worst_mu = std::max(worst_mu, std::abs(lam - lam_ref) / lam_ref);
        }
        ck.add_max("multiuser no-imbalance top eigenvalue matches Gram matrix", worst_mu, 1e-9);
    }

    // 2x2 solver residual on well-conditioned systems
    {
        double worst = 0.0;
        std::normal_distribution<double> g(0.0, 1.0);
        for (int rep = 0; rep < 1000000; ++rep) {
            Eigen::Matrix2d m;
            m << g(rng), g(rng), g(rng), g(rng);
            const double det = m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
            if (std::abs(det) < 0.05 * m.squaredNorm()) continue;
            const Eigen::Vector2d r(g(rng), g(rng));
            const Eigen::Vector2d x = solve2x2(m, r);
            const double res = (m * x - r).norm();
            worst = std::max(worst, res / (1e-12 * (m.norm() * x.norm() + r.norm())));
        }
        ck.add_max("2x2 residual <= 1e-12 (||M|| ||x|| + ||r||)", worst, 1.0);
    }

    // conjugate-path coupling breaks phase invariance of the received power
    {
        bool broken = false;
        const IqiProfile prof = make_profile(4, 1, IqiDelta::uniform(0.4), rng);
        const ChannelRealization ch = draw_channel(4, 1.0, rng);
        const DownlinkCoupling c = downlink_coupling(ch.h.transpose(), prof, CVec::Ones(1));
        const auto [xo, lam] = optimal_precoder(c, 1.0);
        const double p0 = received_signal_power(ch.h.transpose(), prof, xo, CVec::Ones(1));
        for (int rep = 1; rep < 32; ++rep) {
            const cplx rot = std::polar(1.0, rep * 0.2);
            const PrecoderVec xr{CVec(xo.x * rot), xo.budget};
            const double pr = received_signal_power(ch.h.transpose(), prof, xr, CVec::Ones(1));
            if (std::abs(pr - p0) / p0 > 1e-3) broken = true;
        }
        ck.add("phase rotation changes power under imbalance (conjugate path active)", broken);
    }

    return ck.results;
}

}  // namespace iqbeam::validation
