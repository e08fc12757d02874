// Copyright 2026 The projent authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "projent/cli.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <nlohmann/json.hpp>
#include <sstream>

#include "projent/models.hpp"
#include "projent/rates.hpp"

namespace projent::cli {

namespace {

using nlohmann::json;

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, sep)) out.push_back(item);
    return out;
}

double parse_double(const std::string& s) {
    size_t pos = 0;
    double v = 0.0;
    try {
        v = std::stod(s, &pos);
    } catch (const std::exception&) {
        throw InvalidArgument("cannot parse number '" + s + "'");
    }
    if (pos != s.size()) throw InvalidArgument("trailing characters in number '" + s + "'");
    return v;
}

int parse_int(const std::string& s) {
    const double v = parse_double(s);
    const int i = static_cast<int>(std::lround(v));
    if (std::abs(v - i) > 1e-12) throw InvalidArgument("expected an integer, got '" + s + "'");
    return i;
}

// key=value,key=value
std::map<std::string, std::string> parse_kv(const std::string& s) {
    std::map<std::string, std::string> out;
    for (const auto& part : split(s, ',')) {
        const auto eq = part.find('=');
        if (eq == std::string::npos) throw InvalidArgument("expected key=value in '" + part + "'");
        out[part.substr(0, eq)] = part.substr(eq + 1);
    }
    return out;
}

json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidArgument("cannot open '" + path + "'");
    json j;
    in >> j;
    return j;
}

json num_json(double v, const std::string& provenance) {
    json j;
    if (std::isfinite(v)) {
        j["value"] = v;
    } else {
        j["value"] = v > 0 ? "inf" : "-inf";
    }
    j["provenance"] = provenance;
    return j;
}

const char* provenance_name(DivergenceValue::Provenance p) {
    switch (p) {
        case DivergenceValue::Provenance::ClosedForm: return "closed_form";
        case DivergenceValue::Provenance::Conic: return "conic";
        case DivergenceValue::Provenance::WitnessBracket: return "witness_bracket";
    }
    return "?";
}

void write_output(const std::string& path, const std::string& text) {
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(path);
    if (!out) throw InvalidArgument("cannot write '" + path + "'");
    out << text;
}

Measure parse_quantity(const std::string& q) {
    if (q == "dmax") return Measure::DmaxSet;
    if (q == "dmin") return Measure::DminSet;
    if (q == "dproj") return Measure::DprojSet;
    if (q == "rs") return Measure::RobustnessStandard;
    if (q == "dproj_s") return Measure::DprojSSet;
    if (q == "d") return Measure::RelEntropySet;
    throw InvalidArgument("unknown quantity '" + q + "'");
}

ErrorSequence parse_errors(const std::string& s) {
    if (s == "superexponential") return ErrorSequence::superexponential();
    const auto parts = split(s, ':');
    if (parts.size() == 2 && parts[0] == "constant") {
        return ErrorSequence::constant(parse_double(parts[1]));
    }
    if (parts.size() == 2 && parts[0] == "exponential") {
        return ErrorSequence::exponential(parse_double(parts[1]));
    }
    throw InvalidArgument("unknown error sequence '" + s + "'");
}

// Exception-to-exit-code mapping shared by all commands.
int guarded(const std::function<int()>& body) {
    try {
        return body();
    } catch (const WrongRegime& e) {
        std::cerr << "wrong regime: " << e.what() << "\n";
        return kExitWrongRegime;
    } catch (const DenominatorUnresolved& e) {
        std::cerr << "wrong regime: " << e.what() << "\n";
        return kExitWrongRegime;
    } catch (const SolverFailure& e) {
        std::cerr << "solver failure: " << e.what() << "\n";
        return kExitSolver;
    } catch (const BracketError& e) {
        std::cerr << "solver failure: " << e.what() << "\n";
        return kExitSolver;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
}

std::string fig2_csv(int d, double p_lo, double p_hi, double p_step) {
    std::string out = "p,dproj_bits,dsep_inf_bits\n";
    char buf[96];
    for (double p = p_lo; p <= p_hi + 1e-9; p += p_step) {
        const IsotropicParams params{d, std::min(p, 1.0)};
        std::snprintf(buf, sizeof(buf), "%.6f,%.6f,%.6f\n", params.p,
                      isotropic_dproj_bits(params), isotropic_rel_entropy_bits(params));
        out += buf;
    }
    return out;
}

std::string fig2_svg(int d, double p_lo, double p_hi, double p_step) {
    std::vector<double> ps, prob, det;
    double ymax = 0.0;
    for (double p = p_lo; p <= p_hi + 1e-9; p += p_step) {
        const IsotropicParams params{d, std::min(p, 1.0)};
        ps.push_back(params.p);
        prob.push_back(isotropic_dproj_bits(params));
        det.push_back(isotropic_rel_entropy_bits(params));
        ymax = std::max({ymax, prob.back(), det.back()});
    }
    const double w = 640, h = 480, ml = 60, mr = 20, mt = 20, mb = 50;
    auto sx = [&](double p) { return ml + (p - p_lo) / (p_hi - p_lo) * (w - ml - mr); };
    auto sy = [&](double v) { return h - mb - v / ymax * (h - mt - mb); };
    auto polyline = [&](const std::vector<double>& ys, const char* color) {
        std::string s = "<polyline fill=\"none\" stroke=\"";
        s += color;
        s += "\" stroke-width=\"2\" points=\"";
        char buf[48];
        for (size_t i = 0; i < ps.size(); ++i) {
            std::snprintf(buf, sizeof(buf), "%.2f,%.2f ", sx(ps[i]), sy(ys[i]));
            s += buf;
        }
        s += "\"/>\n";
        return s;
    };
    char buf[256];
    std::string svg = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"640\" height=\"480\">\n";
    std::snprintf(buf, sizeof(buf),
                  "<line x1=\"%.1f\" y1=\"%.1f\" x2=\"%.1f\" y2=\"%.1f\" stroke=\"black\"/>\n",
                  ml, h - mb, w - mr, h - mb);
    svg += buf;
    std::snprintf(buf, sizeof(buf),
                  "<line x1=\"%.1f\" y1=\"%.1f\" x2=\"%.1f\" y2=\"%.1f\" stroke=\"black\"/>\n",
                  ml, mt, ml, h - mb);
    svg += buf;
    std::snprintf(buf, sizeof(buf),
                  "<text x=\"%.1f\" y=\"%.1f\" font-size=\"14\">p</text>\n", w / 2, h - 12.0);
    svg += buf;
    std::snprintf(buf, sizeof(buf),
                  "<text x=\"12\" y=\"%.1f\" font-size=\"14\" transform=\"rotate(-90 12 %.1f)\">"
                  "bits per copy</text>\n",
                  h / 2, h / 2);
    svg += buf;
    std::snprintf(buf, sizeof(buf),
                  "<text x=\"%.1f\" y=\"%.1f\" font-size=\"12\">%.2f</text>\n", ml - 35.0, sy(0.0) + 4.0, 0.0);
    svg += buf;
    std::snprintf(buf, sizeof(buf),
                  "<text x=\"%.1f\" y=\"%.1f\" font-size=\"12\">%.2f</text>\n", ml - 45.0, sy(ymax) + 4.0, ymax);
    svg += buf;
    svg += polyline(prob, "#1f77b4");
    svg += polyline(det, "#d62728");
    svg += "<text x=\"480\" y=\"40\" font-size=\"13\" fill=\"#1f77b4\">probabilistic</text>\n";
    svg += "<text x=\"480\" y=\"58\" font-size=\"13\" fill=\"#d62728\">deterministic</text>\n";
    svg += "</svg>\n";
    return svg;
}

json rate_report_json(const RateReport& r) {
    json j;
    j["value_bits_per_copy"] = num_json(r.value_bits_per_copy, "formula");
    j["kind"] = rate_kind_name(r.kind);
    j["formula"] = r.formula;
    json inputs;
    for (const auto& [name, v] : r.inputs) inputs[name] = num_json(v, "bracket");
    j["inputs"] = inputs;
    j["caveats"] = r.caveats;
    return j;
}

}  // namespace

DensityMatrix parse_state(const std::string& spec) {
    if (!spec.empty() && spec[0] == '@') {
        const json j = read_json_file(spec.substr(1));
        CMatrix m = matrix_from_json(j.contains("matrix") ? j["matrix"] : j);
        std::vector<int> dims;
        if (j.contains("subsystem_dims")) dims = j["subsystem_dims"].get<std::vector<int>>();
        return DensityMatrix(HermitianOperator(std::move(m), std::move(dims)));
    }
    const auto colon = spec.find(':');
    if (colon == std::string::npos) throw InvalidArgument("bad state spec '" + spec + "'");
    const std::string kind = spec.substr(0, colon);
    const std::string rest = spec.substr(colon + 1);
    if (kind == "isotropic") {
        auto kv = parse_kv(rest);
        return isotropic({parse_int(kv.at("d")), parse_double(kv.at("p"))});
    }
    if (kind == "maxent") {
        auto kv = parse_kv(rest);
        return max_entangled(parse_int(kv.at("d")));
    }
    if (kind == "diag") {
        const auto parts = split(rest, ',');
        RVector diag(static_cast<int>(parts.size()));
        for (size_t i = 0; i < parts.size(); ++i) diag(static_cast<int>(i)) = parse_double(parts[i]);
        return DensityMatrix(HermitianOperator::diagonal(diag));
    }
    throw InvalidArgument("unknown state kind '" + kind + "'");
}

FreeCone parse_cone(const std::string& spec) {
    if (!spec.empty() && spec[0] == '@') {
        return FreeCone::from_json(read_json_file(spec.substr(1)));
    }
    const auto colon = spec.find(':');
    if (colon == std::string::npos) throw InvalidArgument("bad cone spec '" + spec + "'");
    const std::string kind = spec.substr(0, colon);
    const std::string rest = spec.substr(colon + 1);
    if (kind == "ppt") {
        const auto parts = split(rest, ',');
        if (parts.size() != 2) throw InvalidArgument("ppt cone wants 'ppt:dA,dB'");
        return FreeCone::ppt(parse_int(parts[0]), parse_int(parts[1]));
    }
    if (kind == "diagonal") return FreeCone::diagonal(parse_int(rest));
    if (kind == "singleton") return FreeCone::singleton(parse_state(rest));
    throw InvalidArgument("unknown cone kind '" + kind + "'");
}

int cmd_measure(const RunConfig& cfg) {
    return guarded([&]() {
        const DensityMatrix rho = parse_state(cfg.state);
        const FreeCone cone = parse_cone(cfg.cone);
        const Measure m = parse_quantity(cfg.quantity);

        DivergenceValue v;
        if (!cfg.eps.empty() && cfg.eps[0] > 0.0) {
            v = smoothed(m, rho, cone, SmoothingRadius(cfg.eps[0]));
        } else if (m == Measure::DprojSet && cfg.witness) {
            v = dproj_set(rho, cone, /*want_witness=*/true);
        } else {
            v = eval_measure(m, rho, cone);
        }

        json j;
        j["quantity"] = cfg.quantity;
        j["bits"] = num_json(v.bits, provenance_name(v.provenance));
        if (v.provenance == DivergenceValue::Provenance::Conic ||
            v.provenance == DivergenceValue::Provenance::WitnessBracket) {
            j["gap"] = num_json(v.gap, "conic");
        }
        if (v.provenance == DivergenceValue::Provenance::WitnessBracket) {
            j["witness_lo"] = num_json(v.witness_lo, "witness_bracket");
            j["witness_hi"] = num_json(v.witness_hi, "witness_bracket");
        }
        if (!v.note.empty()) j["note"] = v.note;
        write_output(cfg.out, j.dump(2) + "\n");
        return kExitOk;
    });
}

int cmd_fig2(int d, double p_lo, double p_hi, double p_step, const RunConfig& cfg) {
    return guarded([&]() {
        if (d < 2) throw InvalidArgument("fig2: d must be >= 2");
        if (!(p_step > 0.0) || !(p_hi > p_lo)) throw InvalidArgument("fig2: bad p grid");

        // Closed-form curves are cross-checked against the conic solver at
        // five grid points before anything is written.
        std::vector<double> grid;
        for (double p = p_lo; p <= p_hi + 1e-9; p += p_step) grid.push_back(std::min(p, 1.0));
        const FreeCone cone = FreeCone::ppt(d, d);
        const size_t n = grid.size();
        for (size_t k = 0; k < 5; ++k) {
            const double p = grid[k * (n - 1) / 4];
            const double solver_bits = dproj_set(isotropic({d, p}), cone).bits;
            const double closed = isotropic_dproj_bits({d, p});
            if (std::abs(solver_bits - closed) > 1e-4) {
                std::cerr << "fig2 self-check failed at p=" << p << ": solver " << solver_bits
                          << " vs closed form " << closed << "\n";
                return kExitSelfCheck;
            }
        }

        const std::string text = cfg.format == "svg" ? fig2_svg(d, p_lo, p_hi, p_step)
                                                     : fig2_csv(d, p_lo, p_hi, p_step);
        write_output(cfg.out, text);
        return kExitOk;
    });
}

int cmd_rate(const RunConfig& cfg) {
    return guarded([&]() {
        RateReport report;
        if (cfg.rate == "dichotomy") {
            report = dichotomy_rate(parse_state(cfg.state), parse_state(cfg.sigma),
                                    parse_state(cfg.omega), parse_state(cfg.omega2));
        } else {
            const DensityMatrix rho = parse_state(cfg.state);
            const DensityMatrix omega = parse_state(cfg.omega);
            const FreeConeFamily family(parse_cone(cfg.cone));
            if (cfg.rate == "tradeoff") {
                report = distillation_tradeoff(rho, omega, family, parse_errors(cfg.errors),
                                               cfg.nmax);
            } else if (cfg.rate == "converse_prob") {
                report = converse_prob(rho, omega, family, cfg.nmax);
            } else if (cfg.rate == "converse_det") {
                report = converse_det(rho, omega, family, cfg.nmax);
            } else if (cfg.rate == "exact") {
                report = exact_affine(rho, omega, family, cfg.nmax);
            } else if (cfg.rate == "achievable") {
                std::vector<SmoothingRadius> eps_list;
                for (double e : cfg.eps) eps_list.emplace_back(e);
                report = achievable_standard(rho, omega, family, cfg.nmax, eps_list);
            } else {
                throw InvalidArgument("unknown rate '" + cfg.rate + "'");
            }
        }
        write_output(cfg.out, rate_report_json(report).dump(2) + "\n");
        return kExitOk;
    });
}

}  // namespace projent::cli
