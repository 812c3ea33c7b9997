// Copyright 2026 The ionmed Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "ionmed/magnus.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "ionmed/propagator.hpp"
#include "ionmed/quadrature.hpp"

namespace ionmed {

namespace {

/// C(t) = int_0^t c, cached at panel boundaries so each call only
/// integrates one partial panel.
class Primitive {
   public:
    Primitive(Coefficient c, double t_end, double panel, double tol)
        : c_(std::move(c)), panel_(panel > 0.0 ? panel : t_end), tol_(tol) {
        boundaries_.push_back(0.0);
        const int panels = panel_ > 0.0 ? static_cast<int>(std::ceil(t_end / panel_)) : 0;
        for (int p = 0; p < panels; ++p) {
            boundaries_.push_back(boundaries_.back() +
                                  integrate(c_, p * panel_, (p + 1) * panel_, 0.0, tol_));
        }
    }

    cplx operator()(double t) const {
        if (t <= 0.0 || panel_ <= 0.0) return {};
        const auto p = std::min<std::size_t>(static_cast<std::size_t>(t / panel_),
                                             boundaries_.size() - 1);
        const double start = p * panel_;
        return boundaries_[p] + integrate(c_, start, t, 0.0, tol_);
    }

   private:
    Coefficient c_;
    double panel_;
    double tol_;
    std::vector<cplx> boundaries_;
};

bool commutes(const Matrix& a, const Matrix& b, Matrix& comm) {
    comm.noalias() = a * b;
    comm.noalias() -= b * a;
    const double scale = a.norm() * b.norm();
    return comm.norm() <= 1e-14 * scale;
}

}  // namespace

double operator_norm(const Matrix& m) {
    if (m.size() == 0) return 0.0;
    Eigen::JacobiSVD<Matrix> svd(m);
    return svd.singularValues()(0);
}

Matrix phi1(const TermSum& h, double t, double panel) {
    if (t < 0.0) throw std::invalid_argument("phi1 requires t >= 0");
    Matrix out = Matrix::Zero(h.dim(), h.dim());
    for (const Term& term : h) {
        out += integrate(term.coefficient, 0.0, t, panel) * term.matrix;
    }
    return out;
}

Matrix phi2_numeric(const TermSum& h, double t, const Phi2Options& opts) {
    if (t < 0.0) throw std::invalid_argument("phi2 requires t >= 0");
    const auto& terms = h.terms();
    const std::size_t n = terms.size();
    Matrix out = Matrix::Zero(h.dim(), h.dim());
    if (t == 0.0) return out;

    std::vector<Primitive> prim;
    prim.reserve(n);
    for (const Term& term : terms) prim.emplace_back(term.coefficient, t, opts.panel, opts.rel_tol);

    Matrix comm;
    for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t l = k + 1; l < n; ++l) {
            if (opts.drop_zeroth_order_pairs && terms[k].order == 0 && terms[l].order == 0) continue;
            if (commutes(terms[k].matrix, terms[l].matrix, comm)) continue;
            // I_kl = int_0^t c_k(t') C_l(t') dt'; I_kl + I_lk = C_k(t) C_l(t).
            const Coefficient& ck = terms[k].coefficient;
            const Primitive& cl = prim[l];
            const cplx i_kl =
                integrate([&](double s) { return ck(s) * cl(s); }, 0.0, t, opts.panel, opts.rel_tol);
            const cplx i_lk = prim[k](t) * prim[l](t) - i_kl;
            out += (cplx(0.0, -0.5) * (i_kl - i_lk)) * comm;
        }
    }
    return out;
}

TermSum second_order_terms(const SystemParams& params, const PulseConfig& cfg) {
    const DerivedCouplings d = derive_couplings(params);
    const JointBasis basis(params.n_max);
    const PhononOps ops(basis);
    const double w = params.omega_i;
    const double s2 = std::numbers::sqrt2;

    TermSum h(basis.dim());
    for (Atom a : {Atom::first, Atom::second}) {
        const std::string j = "[" + std::to_string(index_of(a) + 1) + "]";
        const Matrix pr = embed(basis, a, atom_projector(AtomLevel::rydberg));
        if (cfg.laser(a)) {
            if (params.rabi(a) == 0.0) {
                throw ParameterError("laser on atom " + std::to_string(index_of(a) + 1) +
                                     " is active but its Rabi frequency is zero");
            }
            const Matrix k = embed(basis, a,
                                   atom_transition(AtomLevel::rydberg, AtomLevel::level1) -
                                       atom_transition(AtomLevel::level1, AtomLevel::rydberg));
            const cplx pref = cplx(0.0, -0.25 * d.u0(a) * params.rabi(a));
            // xi(t) t + pi(t)/w - pi(0)/w, split into a and a^dagger parts
            h.add("mediated_rabi_a" + j, "-i u0_j W_j/4 [t e^{-iwt}/sqrt2 + (e^{-iwt}-1)/(i sqrt2 w)]",
                  2,
                  [pref, w, s2](double t) {
                      const cplx e = std::exp(cplx(0.0, -w * t));
                      return pref * (t * e / s2 + (e - 1.0) / (cplx(0.0, s2 * w)));
                  },
                  ops.a * k);
            h.add("mediated_rabi_adag" + j,
                  "-i u0_j W_j/4 [t e^{iwt}/sqrt2 - (e^{iwt}-1)/(i sqrt2 w)]", 2,
                  [pref, w, s2](double t) {
                      const cplx e = std::exp(cplx(0.0, w * t));
                      return pref * (t * e / s2 - (e - 1.0) / (cplx(0.0, s2 * w)));
                  },
                  ops.a_dag * k);
        }
        const double shift = -d.u0(a) * d.u0(a) / (2.0 * w);
        h.add("quadratic_shift" + j, "-u0_j^2/(2w) (1 - cos wt)", 2,
              [shift, w](double t) { return cplx(shift * (1.0 - std::cos(w * t))); }, pr);
    }
    const double vmed = -d.u0_1 * d.u0_2 / w;
    h.add("vdw_mediated", "-u0_1 u0_2/w (1 - cos wt)", 2,
          [vmed, w](double t) { return cplx(vmed * (1.0 - std::cos(w * t))); }, rr_projector(basis));
    return h;
}

Matrix h_eff_second_order_analytic(const SystemParams& params, const PulseConfig& cfg, double t) {
    return second_order_terms(params, cfg)(t);
}

MagnusReport magnus_check(const SystemParams& params, const PulseConfig& cfg, double t) {
    const DerivedCouplings d = derive_couplings(params);
    const JointBasis basis(params.n_max);
    const double period = two_pi / params.omega_i;

    MagnusReport r;
    r.t = t;
    r.beta = std::max(d.beta1, d.beta2);
    const TermSum h = full_hamiltonian(params, cfg);
    r.phi1 = phi1(h, t, period);
    Phi2Options opts;
    opts.drop_zeroth_order_pairs = true;
    opts.panel = period;
    r.phi2_numeric = phi2_numeric(h, t, opts);
    r.h2_analytic_integral = phi1(second_order_terms(params, cfg), t, period);

    const Matrix q = below_cutoff_projector(basis);
    const Matrix diff = q * (r.phi2_numeric - r.h2_analytic_integral) * q;
    r.deviation = operator_norm(diff);
    const double ref = operator_norm(q * r.h2_analytic_integral * q);
    r.relative_deviation = ref > 0.0 ? r.deviation / ref : r.deviation;
    return r;
}

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 2) {
        throw std::invalid_argument("slope needs at least two matching points");
    }
    double mx = 0.0, my = 0.0;
    const double n = static_cast<double>(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += std::log(x[i]);
        my += std::log(y[i]);
    }
    mx /= n;
    my /= n;
    double sxy = 0.0, sxx = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double dx = std::log(x[i]) - mx;
        sxy += dx * (std::log(y[i]) - my);
        sxx += dx * dx;
    }
    return sxy / sxx;
}

BetaScalingResult beta_scaling(const SystemParams& params, const std::vector<double>& betas,
                               int steps_per_period, long max_steps) {
    const DerivedCouplings base = derive_couplings(params);
    const PulseConfig cfg = PulseConfig::only(Atom::first);
    BetaScalingResult result;
    std::vector<double> xs, ys;
    for (double beta : betas) {
        SystemParams p = params;
        const double s = base.beta1 / beta;
        p.z1 *= s;
        p.z2 *= s;
        p.gamma = 0.0;
        const TermSum full = full_hamiltonian(p, cfg);
        const TermSum eff = effective_hamiltonian(p, cfg);
        const double duration = std::numbers::pi / p.rabi1;

        // Resolve the fastest scale so strongly coupled points stay accurate.
        double h_max = 0.0;
        for (int k = 0; k <= 16; ++k) {
            const double t = duration * k / 16.0;
            h_max = std::max({h_max, operator_norm(full(t)), operator_norm(eff(t))});
        }
        const double dt = std::min(two_pi / p.omega_i / steps_per_period, 0.05 / h_max);
        const double steps = std::ceil(duration / dt);
        if (steps > max_steps) {
            result.points.push_back({beta, s, std::numeric_limits<double>::quiet_NaN(), steps, false});
            continue;
        }

        const Matrix uf = propagator_matrix(full, 0.0, duration, dt);
        const Matrix ue = propagator_matrix(eff, 0.0, duration, dt);
        result.points.push_back({beta, s, operator_norm(uf - ue), steps, true});
        xs.push_back(beta);
        ys.push_back(result.points.back().deviation);
    }
    result.slope = xs.size() >= 2 ? loglog_slope(xs, ys) : std::numeric_limits<double>::quiet_NaN();
    return result;
}

bool BetaScalingResult::all_resolved() const {
    return std::all_of(points.begin(), points.end(), [](const BetaScalingPoint& p) { return p.resolved; });
}

}  // namespace ionmed
