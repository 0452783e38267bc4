#pragma once

#include <apolar/report.hpp>

#include <chrono>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace apolar {

/// A fully resolved CLI invocation; every run is reproducible from
/// (verb, target, inputs, field, seed).
struct Command {
    std::string verb;
    std::string target;
    FieldSpec field = FieldSpec::rationals();
    std::optional<std::string> form_text; // --form (or piped stdin)
    std::optional<std::string> points_path;
    std::optional<std::string> gens_path;
    std::optional<int> g;
    std::optional<std::string> lambda_csv;
    std::optional<std::string> ell_csv;
    bool include_unit = false;
    int t_max = 0;
    long long budget = 2000000;
    std::uint64_t seed = 0;
    bool json_output = false;
    int degree_cap = 0; // 0: derive from the input degree
    int p_max = 2;
    int q_max = 4;
    int socle_degree = 3;
    bool timing = false;
};

struct RunResult {
    int exit_code = 0;
    std::string text;
    json report;
};

namespace detail {

struct CheckList {
    json entries = json::array();
    bool all_pass = true;

    void add(const std::string& name, bool pass) {
        entries.push_back(json{{"name", name}, {"pass", pass}});
        all_pass &= pass;
    }
};

inline std::vector<FieldElement> parse_csv_scalars(const std::string& csv,
                                                   const FieldSpec& spec) {
    std::vector<FieldElement> out;
    std::stringstream ss(csv);
    std::string tok;
    while (std::getline(ss, tok, ',')) out.push_back(parse_field_element(tok, spec));
    return out;
}

inline DividedForm command_divided_form(const Command& cmd) {
    if (!cmd.form_text)
        throw error(errc::invalid_input, "no form given (use --form or pipe one in)");
    ParsedForm p = parse_form(*cmd.form_text, cmd.field);
    if (!p.is_divided())
        throw error(errc::invalid_input, "expected a divided form in the y-variables");
    return p.divided();
}

inline Form command_poly_form(const Command& cmd) {
    if (!cmd.form_text)
        throw error(errc::invalid_input, "no form given (use --form or pipe one in)");
    ParsedForm p = parse_form(*cmd.form_text, cmd.field);
    if (p.is_divided())
        throw error(errc::invalid_input, "expected a polynomial form in the x-variables");
    return p.poly();
}

/// textual forms drop trailing unused variables; rebuild in a wider ambient
inline DividedForm widen_divided(const DividedForm& f, int vars) {
    if (f.var_count() == vars) return f;
    if (f.var_count() > vars)
        throw error(errc::ambient_mismatch, "form uses more variables than the point set");
    DividedForm out(vars, f.degree(), f.spec());
    for (const auto& [m, c] : f.coeffs()) {
        std::vector<int> e = m.exponents();
        e.resize(vars, 0);
        out.add_term(MultiIndex(std::move(e)), c);
    }
    return out;
}

inline std::vector<FieldElement> command_lambda(const Command& cmd, int expected) {
    if (!cmd.lambda_csv) throw error(errc::invalid_input, "--lambda is required here");
    auto vals = parse_csv_scalars(*cmd.lambda_csv, cmd.field);
    if (expected > 0 && static_cast<int>(vals.size()) != expected)
        throw error(errc::invalid_input,
                    "expected " + std::to_string(expected) + " lambda values, got " +
                        std::to_string(vals.size()));
    return vals;
}

/// minimal generators of a point ideal, degree by degree
inline std::vector<Form> point_ideal_generators(const PointSet& pts, int up_to) {
    std::vector<Form> gens;
    GradedPiece prev = point_ideal_piece(pts, 0);
    for (int e = 1; e <= up_to; ++e) {
        GradedPiece cur = point_ideal_piece(pts, e);
        for (Form& f : complement_rows(cur, times_linear(prev))) gens.push_back(std::move(f));
        prev = std::move(cur);
    }
    return gens;
}

inline std::vector<Form> perp_minimal_generators(const DividedForm& f) {
    std::vector<Form> gens;
    for (const auto& block : minimal_generators(f, f.degree() + 1))
        for (Form g : block.generators.forms()) gens.push_back(std::move(g));
    return gens;
}

} // namespace detail

inline RunResult run(const Command& cmd) {
    using clock = std::chrono::steady_clock;
    auto start = clock::now();

    RunResult out;
    json inputs = json::object();
    json results = json::object();
    detail::CheckList checks;
    std::ostringstream text;

    auto finalize = [&](int code, const std::string& status) {
        out.exit_code = code;
        out.report = json{{"verb", cmd.verb},   {"target", cmd.target},
                          {"field", cmd.field.name()}, {"seed", cmd.seed},
                          {"inputs", inputs},   {"results", results},
                          {"checks", checks.entries}, {"status", status},
                          {"exit_code", code}};
        if (cmd.timing)
            out.report["wall_ms"] =
                std::chrono::duration_cast<std::chrono::milliseconds>(clock::now() - start)
                    .count();
        out.text = text.str();
        return out;
    };

    try {
        const FieldSpec& k = cmd.field;
        inputs["field"] = k.name();

        if (cmd.verb == "construct") {
            if (!cmd.g) throw error(errc::invalid_input, "construct needs --g");
            int g = *cmd.g;
            inputs["g"] = g;
            if (cmd.target == "fermat") {
                CubicFamilyInstance inst{CubicFamilyInstance::Kind::fermat, g, {}};
                DividedForm f = inst.build(k);
                results["form"] = to_string(f);
                text << to_string(f) << "\n";
            } else if (cmd.target == "almost-minimal") {
                auto lambda = detail::command_lambda(cmd, g - 2);
                inputs["lambda"] = *cmd.lambda_csv;
                CubicFamilyInstance inst{CubicFamilyInstance::Kind::almost_minimal, g, lambda};
                DividedForm f = inst.build(k);
                results["form"] = to_string(f);
                text << to_string(f) << "\n";
            } else if (cmd.target == "frame-points") {
                inputs["unit"] = cmd.include_unit;
                PointSet pts = frame_points(g, cmd.include_unit, k);
                json plist = json::array();
                for (int i = 0; i < pts.size(); ++i) {
                    plist.push_back(to_json(pts[i]));
                    for (int c = 0; c < pts.var_count(); ++c)
                        text << (c ? "," : "") << pts[i][c].str();
                    text << "\n";
                }
                results["points"] = plist;
            } else if (cmd.target == "q-prime") {
                auto lambda = detail::command_lambda(cmd, g - 2);
                inputs["lambda"] = *cmd.lambda_csv;
                Form q = completing_quadric(g, lambda, k);
                results["form"] = to_string(q);
                text << to_string(q) << "\n";
            } else {
                throw error(errc::invalid_input, "unknown construct target '" + cmd.target + "'");
            }
            return finalize(0, "ok");
        }

        if (cmd.verb == "perp") {
            DividedForm f = detail::command_divided_form(cmd);
            inputs["form"] = to_string(f);
            int cap = cmd.degree_cap > 0 ? cmd.degree_cap : f.degree() + 1;
            json pieces = json::array();
            for (int e = 1; e <= cap; ++e) {
                GradedPiece p = perp_piece(f, e);
                pieces.push_back(to_json(p));
                text << "degree " << e << ": dim " << p.dim() << "\n";
                for (const Form& row : p.forms()) text << "  " << to_string(row) << "\n";
            }
            results["pieces"] = pieces;
            return finalize(0, "ok");
        }

        if (cmd.verb == "hilbert") {
            DividedForm f = detail::command_divided_form(cmd);
            inputs["form"] = to_string(f);
            HilbertFunction h = hilbert_function(f);
            results["hilbert"] = to_json(h);
            text << "(";
            for (std::size_t i = 0; i < h.values.size(); ++i)
                text << (i ? ", " : "") << h.values[i];
            text << ")\n";
            return finalize(0, "ok");
        }

        if (cmd.verb == "betti") {
            std::vector<Form> gens;
            std::string source;
            std::optional<HilbertFunction> quotient_hf;
            const bool genus_family = cmd.g.has_value() && cmd.lambda_csv.has_value();
            if (genus_family) {
                auto lambda = detail::command_lambda(cmd, *cmd.g - 2);
                inputs["g"] = *cmd.g;
                inputs["lambda"] = *cmd.lambda_csv;
                DividedForm f = almost_minimal_form(*cmd.g, lambda, k);
                quotient_hf = hilbert_function(f);
                gens = detail::perp_minimal_generators(f);
                source = "annihilator of the almost-minimal cubic, g=" + std::to_string(*cmd.g);
            } else if (cmd.points_path) {
                inputs["points"] = *cmd.points_path;
                PointSet pts = read_point_file(*cmd.points_path, k);
                gens = detail::point_ideal_generators(pts, cmd.q_max);
                source = "point ideal (" + std::to_string(pts.size()) + " points)";
            } else {
                DividedForm f = detail::command_divided_form(cmd);
                inputs["form"] = to_string(f);
                quotient_hf = hilbert_function(f);
                gens = detail::perp_minimal_generators(f);
                source = "annihilator of the given cubic";
            }
            BettiTable table = betti_table(gens, cmd.p_max, cmd.q_max);
            table.source = source;
            results["betti"] = to_json(table);
            text << table.display();
            if (genus_family) {
                for (const auto& entry : betti_difference_check(table, *cmd.g)) {
                    std::ostringstream name;
                    name << "beta_{" << entry.p << "," << entry.p + 1 << "} - beta_{"
                         << entry.p - 1 << "," << entry.p + 1 << "} == p*C(g-2,p+1)-(g-1-p)*C(g-2,g-p)";
                    checks.add(name.str(), entry.pass);
                }
            }
            if (quotient_hf && !gens.empty()) {
                bool consistent = true;
                for (const auto& e : hilbert_series_consistency(table, quotient_hf->values,
                                                                gens.front().var_count()))
                    consistent &= e.consistent;
                checks.add("alternating sums match the quotient dimensions within the window",
                           consistent);
            }
            for (const auto& e : checks.entries)
                text << (e["pass"].get<bool>() ? "[ok]   " : "[FAIL] ")
                     << e["name"].get<std::string>() << "\n";
            return finalize(checks.all_pass ? 0 : 1, checks.all_pass ? "ok" : "check_failed");
        }

        if (cmd.verb == "check-apolar") {
            if (!cmd.points_path) throw error(errc::invalid_input, "check-apolar needs --points");
            PointSet pts = read_point_file(*cmd.points_path, k);
            DividedForm f = detail::widen_divided(detail::command_divided_form(cmd), pts.var_count());
            inputs["form"] = to_string(f);
            inputs["points"] = *cmd.points_path;
            bool pass = check_apolarity_lemma(pts, f);
            checks.add("point ideal contained in the annihilator (degrees 1.." +
                           std::to_string(f.degree()) + ")",
                       pass);
            results["apolar"] = pass;
            text << (pass ? "apolar\n" : "not apolar\n");
            return finalize(pass ? 0 : 1, pass ? "ok" : "check_failed");
        }

        if (cmd.verb == "waring") {
            DividedForm f = detail::command_divided_form(cmd);
            inputs["form"] = to_string(f);
            if (cmd.points_path) {
                PointSet pts = read_point_file(*cmd.points_path, k);
                inputs["points"] = *cmd.points_path;
                f = detail::widen_divided(f, pts.var_count());
                auto lambda = waring_coefficients(f, pts.points());
                if (lambda) {
                    json ls = json::array();
                    for (const auto& l : *lambda) ls.push_back(l.str());
                    results["representable"] = true;
                    results["lambda"] = ls;
                    text << "coefficients:";
                    for (const auto& l : *lambda) text << " " << l.str();
                    text << "\n";
                } else {
                    results["representable"] = false;
                    text << "not representable over the given points\n";
                }
                return finalize(0, "ok");
            }
            if (cmd.t_max <= 0)
                throw error(errc::invalid_input, "waring needs --points or --tmax");
            inputs["t_max"] = cmd.t_max;
            inputs["budget"] = cmd.budget;
            auto found = waring_rank_bruteforce(f, cmd.t_max, cmd.budget);
            if (found) {
                results["found"] = true;
                results["rank"] = found->rank;
                results["decomposition"] = to_json(found->decomposition);
                text << "rank " << found->rank << " over " << k.name() << "\n";
            } else {
                results["found"] = false;
                text << "no decomposition with at most " << cmd.t_max << " points over "
                     << k.name() << "\n";
            }
            return finalize(0, "ok");
        }

        if (cmd.verb == "verify") {
            if (cmd.target == "remark18") {
                if (!cmd.g) throw error(errc::invalid_input, "verify remark18 needs --g");
                inputs["g"] = *cmd.g;
                TailReport rep = verify_resolution_tail(*cmd.g, k);
                json cols = json::array();
                for (const auto& c : rep.columns) {
                    cols.push_back(json{{"column", c.column}, {"pass", c.pass}});
                    checks.add("tail-matrix column " + std::to_string(c.column) +
                                   " presents the cube differences",
                               c.pass);
                }
                results["columns"] = cols;
                text << rep.columns.size() << " columns, "
                     << (rep.all_pass() ? "all pass" : "FAILURES present") << "\n";
                return finalize(rep.all_pass() ? 0 : 1, rep.all_pass() ? "ok" : "check_failed");
            }
            if (cmd.target == "eval-identity") {
                Form q = detail::command_poly_form(cmd);
                if (!cmd.ell_csv) throw error(errc::invalid_input, "--ell is required");
                auto coords = detail::parse_csv_scalars(*cmd.ell_csv, k);
                while (static_cast<int>(coords.size()) < q.var_count())
                    coords.push_back(FieldElement::zero(k));
                LinearForm ell(coords, k);
                int d = cmd.socle_degree;
                inputs["q"] = to_string(q);
                inputs["ell"] = to_json(ell);
                inputs["d"] = d;
                EvalIdentityResult r = eval_identity_check(q, ell, d);
                results["lhs"] = to_string(r.lhs);
                results["rhs"] = to_string(r.rhs);
                checks.add("q(ell^[d]) == q(a) ell^[d-e]", r.equal);
                text << "lhs = " << to_string(r.lhs) << "\nrhs = " << to_string(r.rhs) << "\n";
                return finalize(r.equal ? 0 : 1, r.equal ? "ok" : "check_failed");
            }
            if (cmd.target == "koszul") {
                if (!cmd.g) throw error(errc::invalid_input, "verify koszul needs --g");
                int g = *cmd.g;
                auto lambda = detail::command_lambda(cmd, g - 2);
                inputs["g"] = g;
                inputs["lambda"] = *cmd.lambda_csv;
                PointSet pts = frame_points(g, true, k);
                std::vector<Form> point_gens = point_ideal_piece(pts, 2).forms();
                Form qf = completing_quadric(g, lambda, k);
                auto certs = koszul_syzygy_certificate(point_gens, qf);
                long long expected = gamma(g, 1);
                checks.add("certificate count == C(g-2,2) - 1",
                           static_cast<long long>(certs.size()) == expected);
                results["certificates"] = certs.size();
                text << certs.size() << " Koszul syzygy certificates, all verified\n";
                return finalize(checks.all_pass ? 0 : 1, checks.all_pass ? "ok" : "check_failed");
            }
            throw error(errc::invalid_input, "unknown verify target '" + cmd.target + "'");
        }

        if (cmd.verb == "classify") {
            DividedForm f = detail::command_divided_form(cmd);
            inputs["form"] = to_string(f);
            inputs["budget"] = cmd.budget;
            ClassificationReport rep = classify_form(f, cmd.budget);
            results["classification"] = to_json(rep);
            text << verdict_name(rep.verdict) << "\n";
            for (const auto& e : rep.evidence) text << "  " << e << "\n";
            return finalize(0, "ok");
        }

        if (cmd.verb == "dual-socle") {
            if (!cmd.gens_path) throw error(errc::invalid_input, "dual-socle needs --gens");
            inputs["gens"] = *cmd.gens_path;
            inputs["d"] = cmd.socle_degree;
            std::vector<Form> gens;
            int vars = 0;
            for (const ParsedForm& p : read_forms_file(*cmd.gens_path, k)) {
                if (p.is_divided())
                    throw error(errc::invalid_input, "generators must be x-variable forms");
                vars = std::max(vars, p.poly().var_count());
            }
            for (ParsedForm& p : read_forms_file(*cmd.gens_path, k)) {
                Form f(vars, p.degree(), k);
                for (const auto& [m, c] : p.poly().coeffs()) {
                    std::vector<int> e = m.exponents();
                    e.resize(vars, 0);
                    f.add_term(MultiIndex(std::move(e)), c);
                }
                gens.push_back(std::move(f));
            }
            std::map<int, GradedPiece> pieces;
            for (int e = 1; e <= cmd.socle_degree; ++e)
                pieces.emplace(e, ideal_piece(gens, e, vars, k));
            DividedForm f = dual_socle_generator(pieces, vars, cmd.socle_degree, k);
            results["form"] = to_string(f);
            text << to_string(f) << "\n";
            return finalize(0, "ok");
        }

        throw error(errc::invalid_input, "unknown verb '" + cmd.verb + "'");
    } catch (const error& e) {
        results = json::object();
        json err{{"message", e.what()},
                 {"kind", e.code() == errc::budget_exceeded ? "budget_exceeded" : "input_error"}};
        out.report = json{{"verb", cmd.verb},   {"target", cmd.target},
                          {"field", cmd.field.name()}, {"seed", cmd.seed},
                          {"inputs", inputs},   {"results", results},
                          {"checks", checks.entries}, {"status", "error"},
                          {"error", err}};
        int code = e.code() == errc::budget_exceeded ? 3 : 2;
        out.report["exit_code"] = code;
        out.exit_code = code;
        out.text = std::string("error: ") + e.what() + "\n";
        return out;
    }
}

} // namespace apolar
