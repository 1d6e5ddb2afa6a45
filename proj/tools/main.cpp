#include "wittforge/levels.hpp"
#include "wittforge/parser.hpp"
#include "wittforge/pfister.hpp"
#include "wittforge/valuesets.hpp"
#include "wittforge/verify.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <functional>
#include <iostream>

using json = nlohmann::json;
using namespace wittforge;

namespace {

json result_json(const LevelResult& r) {
    json j;
    switch (r.kind) {
        case LevelResult::Kind::finite:
            j["kind"] = "finite";
            j["value"] = r.value;
            break;
        case LevelResult::Kind::infinite:
            j["kind"] = "infinite";
            break;
        case LevelResult::Kind::exceeded:
            j["kind"] = "exceeded";
            j["cap"] = r.value;
            break;
    }
    return j;
}

json certificate_json(const LevelResult& r) {
    json j;
    if (r.obstruction) {
        j["ordering"] = r.obstruction->ordering.str();
        j["signature"] = r.obstruction->signature;
    }
    if (!r.note.empty()) j["note"] = r.note;
    return j;
}

json report_json(const ValueSetReport& rep) {
    json adm = json::array(), exc = json::array(), und = json::array();
    for (const auto& [v, tags] : rep.admissible) adm.push_back({{"value", v}, {"tags", tags}});
    for (const auto& [v, tags] : rep.excluded) exc.push_back({{"value", v}, {"tags", tags}});
    for (u64 v : rep.undecided) und.push_back(v);
    return json{{"admissible", adm},
                {"excluded", exc},
                {"undecided", und},
                {"horizon", rep.horizon},
                {"from", rep.lower_is_zero ? 0 : 1},
                {"equality", rep.equality}};
}

void print_report_table(const ValueSetReport& rep) {
    auto row = [](u64 v, const std::vector<std::string>& tags) {
        std::string t;
        for (std::size_t i = 0; i < tags.size(); ++i) t += (i ? "," : "") + tags[i];
        std::cout << "  " << v << "\t" << t << "\n";
    };
    std::cout << "admissible:\n";
    for (const auto& [v, tags] : rep.admissible) row(v, tags);
    std::cout << "excluded:\n";
    for (const auto& [v, tags] : rep.excluded) row(v, tags);
    std::cout << "undecided:";
    for (u64 v : rep.undecided) std::cout << " " << v;
    std::cout << "\nequality: " << rep.equality << "\n";
}

struct CommonArgs {
    std::string field;
    std::string expr;
    bool as_json = false;
};

FieldDesc field_of(const CommonArgs& a) {
    return parse_field(a.field);
}

Form form_of(const CommonArgs& a, const FieldDesc& F) {
    return parse_form(a.expr, F);
}

json base_json(const std::string& command, const CommonArgs& a, const Form& q) {
    return json{{"schema", 1}, {"command", command}, {"field", a.field}, {"form", q.str()}};
}

void add_common(CLI::App* cmd, CommonArgs& args) {
    cmd->add_option("--field", args.field, "ground field: Q, R, Qp(p), Fp(p), laurent(...)")
        ->required();
    cmd->add_option("expr", args.expr, "form expression")->required();
    cmd->add_flag("--json", args.as_json, "machine-readable output");
}

int run(int argc, char** argv) {
    CLI::App app{"exact quadratic form arithmetic over computable field towers"};
    app.require_subcommand(1);

    CommonArgs iso_args, witt_args, lvl_args, sub_args, qlen_args, i1_args, pf_args, sig_args;
    std::string qlen_of, qlen_phi;
    std::string i1_neighbor, i1_tensor_pfister, i1_tensor_rest, i1_rest_neighbor;

    auto* c_iso = app.add_subcommand("isotropy", "decide whether the form is isotropic");
    add_common(c_iso, iso_args);

    auto* c_witt = app.add_subcommand("witt", "Witt index and anisotropic kernel");
    add_common(c_witt, witt_args);

    auto* c_lvl = app.add_subcommand("level", "least n with <1> + n copies isotropic");
    add_common(c_lvl, lvl_args);

    auto* c_sub = app.add_subcommand("sublevel", "least n with n+1 copies isotropic");
    add_common(c_sub, sub_args);

    auto* c_qlen = app.add_subcommand("qlength", "q-length of an element or a form");
    add_common(c_qlen, qlen_args);
    c_qlen->add_option("--of", qlen_of, "element whose q-length is computed");
    c_qlen->add_option("--phi", qlen_phi, "form whose q-length is computed");

    auto* c_i1 = app.add_subcommand("i1", "certified first Witt index interval");
    add_common(c_i1, i1_args);
    c_i1->add_option("--neighbor", i1_neighbor, "a Pfister form the input neighbors");
    c_i1->add_option("--tensor-pfister", i1_tensor_pfister, "Pfister factor of the input");
    c_i1->add_option("--tensor-rest", i1_tensor_rest, "remaining tensor factor");
    c_i1->add_option("--rest-neighbor", i1_rest_neighbor,
                     "a Pfister form the remaining factor neighbors");

    auto* c_pf = app.add_subcommand("pfister-check", "similarity to a Pfister form");
    add_common(c_pf, pf_args);

    auto* c_sig = app.add_subcommand("sigsets", "value sets determined by the signature window");
    add_common(c_sig, sig_args);
    u64 sig_horizon = 0;
    c_sig->add_option("--horizon", sig_horizon, "largest integer analysed");

    auto* c_values = app.add_subcommand("values", "admissible and excluded invariant values");
    std::string v_kind = "sublevel", v_i1, v_bound = "inf", v_format = "table";
    u64 v_dim = 0, v_horizon = 0;
    bool v_maxsplit_iter = false, v_repr_one = false;
    c_values->add_option("--kind", v_kind, "sublevel or level")
        ->check(CLI::IsMember({"sublevel", "level"}));
    c_values->add_option("--dim", v_dim, "dimension of the form")->required();
    c_values->add_option("--i1", v_i1, "first Witt index LO or LO:HI");
    c_values->add_option("--bound", v_bound, "base value of the invariant, or inf");
    c_values->add_option("--horizon", v_horizon, "largest integer analysed")->required();
    c_values->add_option("--format", v_format, "table or json")
        ->check(CLI::IsMember({"table", "json"}));
    c_values->add_flag("--maxsplit-iterates", v_maxsplit_iter,
                       "certify that every iterate has maximal splitting");
    c_values->add_flag("--represents-one", v_repr_one, "certify that the form represents 1");

    auto* c_verify = app.add_subcommand("verify-paper", "run the golden cross-check suite");
    bool verify_json = false;
    c_verify->add_flag("--json", verify_json, "machine-readable output");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    if (c_iso->parsed()) {
        FieldDesc F = field_of(iso_args);
        Form q = form_of(iso_args, F);
        bool iso = is_isotropic(q);
        if (iso_args.as_json) {
            json j = base_json("isotropy", iso_args, q);
            j["isotropic"] = iso;
            std::cout << j.dump() << "\n";
        } else {
            std::cout << q.str() << " over " << F.str() << ": "
                      << (iso ? "isotropic" : "anisotropic") << "\n";
        }
        return 0;
    }

    if (c_witt->parsed()) {
        FieldDesc F = field_of(witt_args);
        Form q = form_of(witt_args, F);
        WittDecomposition w = witt_decomposition(q);
        if (witt_args.as_json) {
            json j = base_json("witt", witt_args, q);
            j["witt_index"] = w.witt_index;
            j["kernel"] = w.kernel.str();
            std::cout << j.dump() << "\n";
        } else {
            std::cout << "witt index " << w.witt_index << ", kernel " << w.kernel.str() << "\n";
        }
        return 0;
    }

    auto run_level = [](const char* name, const CommonArgs& args,
                        const std::function<LevelResult(const Form&)>& op) {
        FieldDesc F = parse_field(args.field);
        Form q = parse_form(args.expr, F);
        LevelResult r = op(q);
        if (args.as_json) {
            json j = json{{"schema", 1},
                          {"command", name},
                          {"field", args.field},
                          {"form", q.str()},
                          {"result", result_json(r)},
                          {"certificate", certificate_json(r)}};
            std::cout << j.dump() << "\n";
        } else {
            std::cout << name << " " << r.str();
            if (r.obstruction)
                std::cout << " (definite at " << r.obstruction->ordering.str()
                          << ", signature " << r.obstruction->signature << ")";
            std::cout << "\n";
        }
        return 0;
    };

    if (c_lvl->parsed()) return run_level("level", lvl_args, [](const Form& q) { return level(q); });
    if (c_sub->parsed())
        return run_level("sublevel", sub_args, [](const Form& q) { return sublevel(q); });

    if (c_qlen->parsed()) {
        FieldDesc F = field_of(qlen_args);
        Form q = form_of(qlen_args, F);
        if (qlen_of.empty() == qlen_phi.empty())
            throw CLI::ValidationError("qlength", "use exactly one of --of and --phi");
        LevelResult r = qlen_of.empty()
                            ? q_length_form(q, parse_form(qlen_phi, F))
                            : q_length(q, parse_form("<" + qlen_of + ">", F).coeff(0));
        if (qlen_args.as_json) {
            json j = base_json("qlength", qlen_args, q);
            if (!qlen_of.empty()) j["of"] = qlen_of;
            if (!qlen_phi.empty()) j["phi"] = qlen_phi;
            j["result"] = result_json(r);
            j["certificate"] = certificate_json(r);
            std::cout << j.dump() << "\n";
        } else {
            std::cout << "qlength " << r.str() << "\n";
        }
        return 0;
    }

    if (c_i1->parsed()) {
        FieldDesc F = field_of(i1_args);
        Form q = form_of(i1_args, F);
        I1Hints hints;
        if (!i1_neighbor.empty()) hints.neighbor_of = parse_form(i1_neighbor, F);
        if (!i1_tensor_pfister.empty() || !i1_tensor_rest.empty()) {
            if (i1_tensor_pfister.empty() || i1_tensor_rest.empty())
                throw CLI::ValidationError("i1", "tensor hints need both factors");
            I1Hints::Product prod{parse_form(i1_tensor_pfister, F),
                                  parse_form(i1_tensor_rest, F), nullptr};
            if (!i1_rest_neighbor.empty()) {
                auto sub = std::make_shared<I1Hints>();
                sub->neighbor_of = parse_form(i1_rest_neighbor, F);
                prod.other_hints = sub;
            }
            hints.product = std::move(prod);
        }
        I1Interval iv = i1_interval(q, hints);
        if (i1_args.as_json) {
            json j = base_json("i1", i1_args, q);
            j["lo"] = iv.lo;
            j["hi"] = iv.hi;
            j["provenance"] = iv.provenance;
            std::cout << j.dump() << "\n";
        } else {
            std::cout << "i1 in [" << iv.lo << "," << iv.hi << "] via";
            for (const auto& r : iv.provenance) std::cout << " " << r;
            std::cout << "\n";
        }
        return 0;
    }

    if (c_pf->parsed()) {
        FieldDesc F = field_of(pf_args);
        Form q = form_of(pf_args, F);
        bool sim = is_pfister_similar(q);
        if (pf_args.as_json) {
            json j = base_json("pfister-check", pf_args, q);
            j["pfister_similar"] = sim;
            std::cout << j.dump() << "\n";
        } else {
            std::cout << q.str() << (sim ? " is" : " is not")
                      << " similar to a Pfister form\n";
        }
        return 0;
    }

    if (c_sig->parsed()) {
        FieldDesc F = field_of(sig_args);
        Form q = form_of(sig_args, F);
        ValueSetReport rep = signature_full_sets(q, sig_horizon);
        if (sig_args.as_json) {
            json j = base_json("sigsets", sig_args, q);
            j["report"] = report_json(rep);
            std::cout << j.dump() << "\n";
        } else {
            print_report_table(rep);
        }
        return 0;
    }

    if (c_values->parsed()) {
        Bound bound;
        if (v_bound != "inf") bound = std::stoull(v_bound);
        std::optional<u64> i1_lo, i1_hi;
        if (!v_i1.empty()) {
            auto colon = v_i1.find(':');
            i1_lo = std::stoull(v_i1.substr(0, colon));
            // a bare LO is a lower bound; LO:HI with LO == HI certifies the
            // exact value and unlocks the maximal-splitting rows
            if (colon != std::string::npos) i1_hi = std::stoull(v_i1.substr(colon + 1));
        }
        ValueSetReport rep =
            v_kind == "sublevel"
                ? sublevel_value_report(v_dim, i1_lo, i1_hi, bound, v_horizon, v_maxsplit_iter)
                : level_value_report(v_dim, i1_lo, i1_hi, bound, v_horizon, v_maxsplit_iter,
                                     v_repr_one);
        if (v_format == "json") {
            json j{{"schema", 1}, {"command", "values"}, {"kind", v_kind}, {"dim", v_dim}};
            j["report"] = report_json(rep);
            std::cout << j.dump() << "\n";
        } else {
            print_report_table(rep);
        }
        return 0;
    }

    if (c_verify->parsed()) {
        auto checks = run_verify_suite();
        std::size_t failed = 0;
        for (const auto& c : checks)
            if (!c.pass) ++failed;
        if (verify_json) {
            json arr = json::array();
            for (const auto& c : checks)
                arr.push_back({{"name", c.name},
                               {"detail", c.detail},
                               {"expected", c.expected},
                               {"got", c.got},
                               {"pass", c.pass}});
            json j{{"schema", 1},
                   {"command", "verify-paper"},
                   {"checks", arr},
                   {"failed", failed}};
            std::cout << j.dump() << "\n";
        } else {
            for (const auto& c : checks)
                std::cout << (c.pass ? "[ok]   " : "[FAIL] ") << c.name << " (" << c.detail
                          << "): expected " << c.expected << ", got " << c.got << "\n";
            std::cout << checks.size() - failed << "/" << checks.size() << " checks passed\n";
        }
        return failed == 0 ? 0 : 1;
    }

    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const CLI::ParseError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const wittforge::ParseError& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
