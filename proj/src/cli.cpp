#include "covgl/cli.hpp"

#include "covgl/zeta.hpp"

#include <json.hpp>

#include <chrono>
#include <sstream>

namespace covgl {

namespace {

using ordered_json = nlohmann::ordered_json;

struct CommandOutput {
    VerificationReport report;
    // Optional coefficient table for CSV mode: (exponent, lhs, rhs).
    std::vector<std::tuple<int, std::string, std::string>> coefficients;
    std::vector<std::string> info; // extra text-mode lines
};

std::string describe_descriptor(const CoveringDescriptor& d) {
    std::ostringstream os;
    os << "Q(coroot)=" << d.q_coroot << " n_alpha=" << d.n_alpha << " Y_{Q,n}=";
    if (d.yqn == scaled_standard_lattice(d.r, d.n_alpha)) {
        os << d.n_alpha << "*Z^" << d.r;
    } else {
        os << "rows";
        for (const auto& row : d.yqn.rows()) os << " " << cw_str(row);
    }
    return os.str();
}

CommandOutput run_pair(const RunConfig& cfg) {
    CommandOutput out;
    CoveringDescriptor d(cfg.r, cfg.n, cfg.p, cfg.q);
    auto fits = fits_fundamental_pair(cfg.r, cfg.n, cfg.p, cfg.q);
    bool direct = d.n_alpha > cfg.r &&
                  build_yqn(d.n_alpha, cfg.n, cfg.p, cfg.q) ==
                      scaled_standard_lattice(d.n_alpha, d.n_alpha);
    std::ostringstream detail;
    detail << describe_descriptor(d) << " verdict ";
    if (fits) detail << "FUNDAMENTAL R=" << *fits;
    else detail << "NOT-FUNDAMENTAL";
    out.report.add("fundamental-pair-criterion", fits.has_value() == direct, detail.str());
    std::ostringstream split;
    split << "n | p*n_alpha " << (d.splitting_hypothesis() ? "holds" : "fails");
    out.report.add("splitting-hypothesis", true, split.str());
    return out;
}

CommandOutput run_orbits(const RunConfig& cfg) {
    CommandOutput out;
    CoveringDescriptor d(cfg.r, cfg.n, cfg.p, cfg.q);
    auto classes = orbit_classes(d);
    int free_count = 0;
    for (const auto& cls : classes) {
        if (cls.free) ++free_count;
        std::ostringstream line;
        line << "orbit of " << cw_str(cls.representative) << " size " << cls.size
             << (cls.free ? " free" : "");
        out.info.push_back(line.str());
    }
    int dim = dim_whittaker_theta(d);
    std::ostringstream detail;
    detail << free_count << " free orbit classes, dim Wh = " << dim;
    out.report.add("whittaker-dimension", dim == free_count, detail.str());
    return out;
}

CommandOutput run_whittaker(const RunConfig& cfg) {
    CommandOutput out;
    CoveringDescriptor d(cfg.r, cfg.n, cfg.p, cfg.q);
    auto chi = exceptional_character(d, "v", false);
    Coweight zero(d.r, Int(0));
    CoefficientFunction c(d, zero, chi);

    bool hat_ok = true, mod_ok = true;
    for (const auto& w : all_weyl_elements(d.r)) {
        auto val = c.eval(twisted_act(w, zero));
        if (!(val == c.eval(twisted_act(hat(w), zero)))) hat_ok = false;
        if (!(val.modulus_value() == RingElement::u_pow(-length(w)))) mod_ok = false;
        std::ostringstream line;
        line << "c(s_{w[0]}) for w=";
        for (int i = 1; i <= d.r; ++i) line << w.apply(i);
        line << ": " << val.str();
        out.info.push_back(line.str());
    }
    out.report.add("coefficient-hat-symmetry", hat_ok,
                   "values agree at w[0] and hat(w)[0] for all w");
    out.report.add("coefficient-modulus", mod_ok, "|c(s_{w[0]})| = u^{-l(w)} for all w");

    int bound = cfg.trunc > 0 ? cfg.trunc : d.n_alpha;
    for (long a = 0; a <= bound; ++a) {
        for (long b = 0; b <= a; ++b) {
            if (d.r != 2) break;
            Coweight y = {Int(a), Int(b)};
            auto val = whittaker_theta_value(d, c, y);
            if (val.is_zero()) continue;
            std::ostringstream line;
            line << "W(s_" << cw_str(y) << ") = " << val.str();
            out.info.push_back(line.str());
        }
    }
    return out;
}

CommandOutput run_verify_theta(const RunConfig& cfg) {
    CommandOutput out;
    FundamentalPairInstance inst(cfg.r, cfg.n, cfg.p, cfg.q);
    int order = cfg.trunc > 0 ? cfg.trunc : 3 * inst.n_alpha();
    out.report = verify_theta(inst, order);
    auto zeta = zeta_theta_series(inst, order);
    auto lseries = l_series(inst, order);
    for (int i = 0; i <= order; ++i)
        out.coefficients.emplace_back(i, zeta.coeffs[i].str(), lseries.coeffs[i].str());
    return out;
}

CommandOutput run_verify_rank2(const RunConfig& cfg) {
    CommandOutput out;
    FundamentalPairInstance inst(cfg.r, cfg.n, cfg.p, cfg.q);
    int order = cfg.trunc > 0 ? cfg.trunc : 4 * inst.n_alpha();
    Rank2Options opts{order, cfg.samples, cfg.seed};
    for (auto gamma : {Rank2Gamma::Zero, Rank2Gamma::W1Zero}) {
        auto rep = verify_rank2(inst, gamma, opts);
        std::string tag = gamma == Rank2Gamma::Zero ? "spherical" : "shifted";
        for (auto& c : rep.checks)
            out.report.add(c.anchor + "-" + tag, c.pass, c.detail);
    }
    return out;
}

CommandOutput run_counterexample(const RunConfig& cfg) {
    CommandOutput out;
    int order = cfg.trunc > 0 ? cfg.trunc : 12;
    auto res = counterexample_series(order);
    out.report = res.report;
    out.info.push_back("pair fixed at r=1, R=2, n=3, p=-1, q=-1");
    for (int i = 0; i <= order; ++i)
        out.coefficients.emplace_back(i, res.zeta.coeffs[i].str(),
                                      res.factorized.coeffs[i].str());
    out.info.push_back("residual = zeta - L*W(1)*Wbar(1); residual[1] = " +
                       res.residual.coeffs[1].str());
    return out;
}

std::string render(const RunConfig& cfg, const CommandOutput& out, long elapsed_ms) {
    std::ostringstream os;
    switch (cfg.format) {
    case RunConfig::Format::Json: {
        ordered_json j;
        j["command"] = command_name(cfg.command);
        j["params"] = {{"n", cfg.n},       {"p", cfg.p},           {"q", cfg.q},
                       {"r", cfg.r},       {"trunc", cfg.trunc},   {"samples", cfg.samples},
                       {"seed", cfg.seed}, {"format", "json"}};
        j["checks"] = ordered_json::array();
        for (const auto& c : out.report.checks)
            j["checks"].push_back({{"anchor", c.anchor},
                                   {"status", c.pass ? "pass" : "fail"},
                                   {"detail", c.detail}});
        j["elapsed_ms"] = elapsed_ms;
        os << j.dump(2) << "\n";
        break;
    }
    case RunConfig::Format::Csv: {
        if (!out.coefficients.empty()) {
            os << "exponent,lhs,rhs\n";
            for (const auto& [e, lhs, rhs] : out.coefficients)
                os << e << ",\"" << lhs << "\",\"" << rhs << "\"\n";
        } else {
            os << "anchor,status,detail\n";
            for (const auto& c : out.report.checks)
                os << c.anchor << "," << (c.pass ? "pass" : "fail") << ",\"" << c.detail
                   << "\"\n";
        }
        break;
    }
    case RunConfig::Format::Text: {
        os << command_name(cfg.command);
        if (cfg.command != RunConfig::Command::Counterexample)
            os << " n=" << cfg.n << " p=" << cfg.p << " q=" << cfg.q << " r=" << cfg.r;
        os << "\n";
        for (const auto& line : out.info) os << "  " << line << "\n";
        for (const auto& c : out.report.checks)
            os << "  [" << (c.pass ? "PASS" : "FAIL") << "] " << c.anchor << ": " << c.detail
               << "\n";
        break;
    }
    }
    return os.str();
}

} // namespace

const char* command_name(RunConfig::Command c) {
    switch (c) {
    case RunConfig::Command::Pair: return "pair";
    case RunConfig::Command::Orbits: return "orbits";
    case RunConfig::Command::Whittaker: return "whittaker";
    case RunConfig::Command::VerifyTheta: return "verify-theta";
    case RunConfig::Command::VerifyRank2: return "verify-rank2";
    case RunConfig::Command::Counterexample: return "counterexample";
    }
    return "unknown";
}

RunResult run(const RunConfig& cfg) {
    auto start = std::chrono::steady_clock::now();
    CommandOutput out;
    try {
        switch (cfg.command) {
        case RunConfig::Command::Pair: out = run_pair(cfg); break;
        case RunConfig::Command::Orbits: out = run_orbits(cfg); break;
        case RunConfig::Command::Whittaker: out = run_whittaker(cfg); break;
        case RunConfig::Command::VerifyTheta: out = run_verify_theta(cfg); break;
        case RunConfig::Command::VerifyRank2: out = run_verify_rank2(cfg); break;
        case RunConfig::Command::Counterexample: out = run_counterexample(cfg); break;
        }
    } catch (const std::exception& e) {
        return RunResult{2, std::string("error: ") + e.what() + "\n"};
    }
    long elapsed = 0;
    if (cfg.timing)
        elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
                      std::chrono::steady_clock::now() - start)
                      .count();
    return RunResult{out.report.ok() ? 0 : 1, render(cfg, out, elapsed)};
}

} // namespace covgl
