// pizza: exact Lipschitz contact invariants of plane function germs.
//
// Subcommands: ord, zone, pizza, verify, compare, estimate.
// Exit codes: 0 success, 1 verification failure on analytic input,
//             2 parse/usage error, 3 internal refinement limit.

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <future>
#include <iostream>

#include "pizza/numeric.hpp"
#include "pizza/serialize.hpp"
#include "pizza/verify.hpp"

using namespace pizza;
using nlohmann::ordered_json;

namespace {

std::string profile_side_str(const ProfileSide& s) {
    std::ostringstream os;
    bool first = true;
    for (const ProfileSegment& seg : s.segments) {
        if (!first) os << "; ";
        first = false;
        os << "(" << seg.lo.str() << ", " << seg.hi.str() << (seg.hi.is_inf() ? ")" : "]") << ": ord = ";
        if (seg.slope == 0) {
            os << seg.intercept.str();
        } else {
            if (!seg.intercept.is_zero()) os << seg.intercept.str() << " + ";
            if (seg.slope != 1) os << seg.slope << "*";
            os << "T";
        }
    }
    return os.str();
}

ordered_json profile_side_json(const ProfileSide& s) {
    ordered_json segs = ordered_json::array();
    for (const ProfileSegment& seg : s.segments) {
        ordered_json j;
        j["lo"] = seg.lo.str();
        j["hi"] = seg.hi.str();
        j["slope"] = seg.slope;
        j["intercept"] = seg.intercept.str();
        segs.push_back(std::move(j));
    }
    ordered_json out;
    out["segments"] = std::move(segs);
    out["stabilizes_at"] = s.stab_T.str();
    out["value"] = s.value.str();
    return out;
}

ordered_json verify_json(const VerifyReport& rep) {
    ordered_json out;
    out["function"] = rep.function;
    ordered_json checks = ordered_json::array();
    for (const CheckResult& c : rep.checks) {
        ordered_json j;
        j["name"] = c.name;
        j["pass"] = c.pass;
        if (!c.applicable) j["applicable"] = false;
        j["details"] = c.details;
        checks.push_back(std::move(j));
    }
    out["checks"] = std::move(checks);
    out["status"] = rep.status;
    return out;
}

void print_verify_text(const VerifyReport& rep) {
    std::cout << "function: " << rep.function << "\n";
    for (const CheckResult& c : rep.checks) {
        std::cout << "  [" << (c.pass ? "pass" : "FAIL") << (c.applicable ? "" : "*") << "] "
                  << c.name;
        if (!c.details.empty()) std::cout << ": " << c.details;
        std::cout << "\n";
    }
    std::cout << "status: " << rep.status << "\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact Lipschitz contact invariants of plane function germs"};
    app.require_subcommand(1);
    long refine_cap = max_refine_bits;
    app.add_option("--refine-cap", refine_cap,
                   "interval refinement hard cap in bisection steps (diagnostic guard)");

    std::vector<std::string> fexprs;
    std::string arc_text, corpus_path;
    bool as_json = false, ignore_signs = false;
    SamplingPlan plan;

    auto add_common = [&](CLI::App* cmd, bool needs_arc) {
        cmd->add_option("-f,--function", fexprs, "function expression (germ at the origin)");
        if (needs_arc) cmd->add_option("--arc", arc_text, "arc expression");
        cmd->add_flag("--json", as_json, "machine-readable JSON output");
    };

    CLI::App* cmd_ord = app.add_subcommand("ord", "order of f along an arc");
    add_common(cmd_ord, true);
    CLI::App* cmd_zone = app.add_subcommand("zone", "zone size and deformation profile");
    add_common(cmd_zone, true);
    CLI::App* cmd_pizza = app.add_subcommand("pizza", "the full pizza invariant");
    add_common(cmd_pizza, false);
    CLI::App* cmd_verify = app.add_subcommand("verify", "structure-theorem verification suite");
    add_common(cmd_verify, false);
    cmd_verify->add_option("--corpus", corpus_path, "newline-separated expressions to verify");
    CLI::App* cmd_compare = app.add_subcommand("compare", "decide pizza equivalence of two germs");
    add_common(cmd_compare, false);
    cmd_compare->add_flag("--ignore-signs", ignore_signs, "compare unsigned width data only");
    CLI::App* cmd_estimate = app.add_subcommand("estimate", "floating-point order estimate");
    add_common(cmd_estimate, true);
    cmd_estimate->add_option("--t-min", plan.t_min, "smallest sample parameter");
    cmd_estimate->add_option("--t-max", plan.t_max, "largest sample parameter");
    cmd_estimate->add_option("--samples", plan.samples, "number of geometric samples");

    CLI11_PARSE(app, argc, argv);
    max_refine_bits = refine_cap;

    try {
        if (cmd_ord->parsed() || cmd_zone->parsed() || cmd_estimate->parsed()) {
            if (fexprs.size() != 1 || arc_text.empty()) {
                std::cerr << "error: need exactly one -f and an --arc\n";
                return 2;
            }
            FuncExpr f = parse_expr(fexprs[0]);
            Arc a = parse_arc(arc_text);
            if (cmd_ord->parsed()) {
                QInf o = ord_on_arc(f, a);
                if (as_json) {
                    ordered_json j;
                    j["function"] = fexprs[0];
                    j["arc"] = arc_text;
                    j["ord"] = o.str();
                    std::cout << j.dump(2) << "\n";
                } else {
                    std::cout << o.str() << "\n";
                }
                return 0;
            }
            if (cmd_zone->parsed()) {
                QInf mu = zone_size(f, a);
                DeformationProfile prof = deformation_profile(f, a);
                if (as_json) {
                    ordered_json j;
                    j["function"] = fexprs[0];
                    j["arc"] = arc_text;
                    j["size"] = mu.str();
                    ordered_json pj;
                    pj["symmetric"] = prof.symmetric;
                    pj["plus"] = profile_side_json(prof.plus);
                    if (!prof.symmetric) pj["minus"] = profile_side_json(prof.minus);
                    j["profile"] = std::move(pj);
                    ordered_json ex = ordered_json::array();
                    for (const FieldElement& e : prof.plus.exceptional) ex.push_back(e.str());
                    j["exceptional"] = std::move(ex);
                    std::cout << j.dump(2) << "\n";
                } else {
                    std::cout << "size: " << mu.str() << "\n";
                    std::cout << "profile: " << profile_side_str(prof.plus) << "\n";
                    if (!prof.symmetric)
                        std::cout << "profile (other side): " << profile_side_str(prof.minus)
                                  << "\n";
                    if (!prof.plus.exceptional.empty()) {
                        std::cout << "exceptional coefficients:";
                        for (const FieldElement& e : prof.plus.exceptional)
                            std::cout << " " << e.str();
                        std::cout << "\n";
                    }
                }
                return 0;
            }
            OrdEstimate est = estimate_ord(f, a, plan);
            if (as_json) {
                ordered_json j;
                j["function"] = fexprs[0];
                j["arc"] = arc_text;
                j["estimate"] = est.estimate;
                j["residual"] = est.residual;
                j["underflow"] = est.underflow;
                j["refused"] = est.refused;
                if (!est.note.empty()) j["note"] = est.note;
                std::cout << j.dump(2) << "\n";
            } else {
                if (est.refused || est.underflow) {
                    std::cout << "diagnostic: " << est.note << "\n";
                } else {
                    std::cout << "estimate: " << est.estimate << "\n";
                    std::cout << "residual: " << est.residual << "\n";
                }
            }
            return 0;
        }

        if (cmd_pizza->parsed()) {
            if (fexprs.size() != 1) {
                std::cerr << "error: need exactly one -f\n";
                return 2;
            }
            FuncExpr f = parse_expr(fexprs[0]);
            Pizza p = build_pizza(f);
            if (as_json) {
                std::cout << pizza_to_json(p).dump(2) << "\n";
            } else {
                std::cout << p.pieces.size() << " piece(s):\n";
                for (const PizzaPiece& piece : p.pieces) {
                    std::cout << "  [" << render_arc(piece.left) << "  ->  "
                              << render_arc(piece.right) << "]\n";
                    std::cout << "    beta = " << piece.beta.str() << ", Q = ["
                              << piece.Q.lo.str() << ", " << piece.Q.hi.str() << "], width = ";
                    switch (piece.width.kind) {
                        case Width::Kind::affine:
                            std::cout << piece.width.a.str() << "*q";
                            if (!piece.width.b.is_zero())
                                std::cout << (piece.width.b.sign() > 0 ? " + " : " - ")
                                          << abs(piece.width.b).str();
                            break;
                        case Width::Kind::point:
                            std::cout << "{" << piece.width.point_value.str() << "}";
                            break;
                        case Width::Kind::infinite_:
                            std::cout << "infinite";
                            break;
                    }
                    std::cout << ", sign = " << sign_str(piece.sign) << "\n";
                }
            }
            return 0;
        }

        if (cmd_verify->parsed()) {
            std::vector<std::string> inputs = fexprs;
            if (!corpus_path.empty()) {
                std::ifstream in(corpus_path);
                if (!in) {
                    std::cerr << "error: cannot open corpus file '" << corpus_path << "'\n";
                    return 2;
                }
                std::string line;
                while (std::getline(in, line)) {
                    while (!line.empty() && (line.back() == '\r' || line.back() == ' '))
                        line.pop_back();
                    if (!line.empty() && line[0] != '#') inputs.push_back(line);
                }
            }
            if (inputs.empty()) {
                std::cerr << "error: need -f or --corpus\n";
                return 2;
            }
            // per-function runs are independent; aggregate in input order
            std::vector<std::future<VerifyReport>> futs;
            for (const std::string& s : inputs)
                futs.push_back(std::async(std::launch::async, [s] {
                    FuncExpr f = parse_expr(s);
                    return run_verify(f, s);
                }));
            bool all_ok = true;
            ordered_json arr = ordered_json::array();
            for (auto& fu : futs) {
                VerifyReport rep = fu.get();
                if (rep.analytic && !rep.all_pass) all_ok = false;
                if (as_json)
                    arr.push_back(verify_json(rep));
                else
                    print_verify_text(rep);
            }
            if (as_json) std::cout << (inputs.size() == 1 ? arr[0] : arr).dump(2) << "\n";
            return all_ok ? 0 : 1;
        }

        if (cmd_compare->parsed()) {
            if (fexprs.size() != 2) {
                std::cerr << "error: compare needs -f twice\n";
                return 2;
            }
            Pizza p1 = build_pizza(parse_expr(fexprs[0]));
            Pizza p2 = build_pizza(parse_expr(fexprs[1]));
            CompareResult r = compare_pizzas(p1, p2, ignore_signs);
            if (as_json) {
                ordered_json j;
                j["f1"] = fexprs[0];
                j["f2"] = fexprs[1];
                j["equivalent"] = r.equivalent;
                if (r.equivalent) {
                    j["rotation"] = r.rotation;
                    j["reflected"] = r.reflected;
                    j["sign_flipped"] = r.sign_flipped;
                }
                std::cout << j.dump(2) << "\n";
            } else {
                std::cout << "equivalent: " << (r.equivalent ? "yes" : "no") << "\n";
                if (r.equivalent)
                    std::cout << "alignment: rotation " << r.rotation << ", "
                              << (r.reflected ? "reflected" : "direct") << ", signs "
                              << (r.sign_flipped ? "flipped" : "matched") << "\n";
            }
            return 0;
        }
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 2;
    } catch (const RefinementLimit& e) {
        std::cerr << "internal limit: " << e.what() << "\n";
        return 3;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
