#pragma once

#include <apolar/betti.hpp>
#include <apolar/constructs.hpp>
#include <apolar/parse.hpp>
#include <apolar/points.hpp>

#include <json.hpp>

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace apolar {

using json = nlohmann::json;

inline json to_json(const HilbertFunction& h) { return json(h.values); }

template <class Tag>
inline json form_json(const GradedForm<Tag>& f) {
    return json{{"degree", f.degree()},
                {"vars", f.var_count()},
                {"text", to_string(f)}};
}

inline json to_json(const GradedPiece& p) {
    json rows = json::array();
    for (int i = 0; i < p.dim(); ++i) rows.push_back(to_string(p.row_form(i)));
    return json{{"degree", p.degree}, {"dim", p.dim()}, {"basis", rows}};
}

inline json to_json(const BettiTable& t) {
    json entries = json::array();
    for (const auto& [pq, v] : t.beta)
        entries.push_back(json{{"p", pq.first}, {"q", pq.second}, {"beta", v}});
    return json{{"entries", entries},
                {"p_max", t.p_max},
                {"q_max", t.q_max},
                {"source", t.source}};
}

inline json to_json(const LinearForm& ell) {
    json coords = json::array();
    for (const auto& c : ell.coords()) coords.push_back(c.str());
    return coords;
}

inline json to_json(const WaringDecomposition& w) {
    json terms = json::array();
    for (const auto& [lambda, ell] : w.terms())
        terms.push_back(json{{"lambda", lambda.str()}, {"point", to_json(ell)}});
    return json{{"terms", terms},
                {"target", to_string(w.target())},
                {"vars", w.target().var_count()},
                {"degree", w.degree()},
                {"span_dim", w.linear_span_dim()}};
}

/// Rebuilds (and thereby re-verifies) a decomposition from its report form.
inline WaringDecomposition waring_from_json(const json& j, const FieldSpec& spec) {
    ParsedForm parsed = parse_form(j.at("target").get<std::string>(), spec);
    if (!parsed.is_divided())
        throw error(errc::invalid_input, "decomposition target must be a divided form");
    // the textual form drops trailing unused variables; restore the ambient
    const int vars = j.at("vars").get<int>();
    if (parsed.var_count() > vars)
        throw error(errc::invalid_input, "target uses more variables than declared");
    DividedForm target(vars, parsed.degree(), spec);
    for (const auto& [m, c] : parsed.divided().coeffs()) {
        std::vector<int> e = m.exponents();
        e.resize(vars, 0);
        target.add_term(MultiIndex(std::move(e)), c);
    }
    std::vector<std::pair<FieldElement, LinearForm>> terms;
    for (const json& t : j.at("terms")) {
        FieldElement lambda = parse_field_element(t.at("lambda").get<std::string>(), spec);
        std::vector<FieldElement> coords;
        for (const json& c : t.at("point")) coords.push_back(parse_field_element(c.get<std::string>(), spec));
        terms.emplace_back(lambda, LinearForm(std::move(coords), spec));
    }
    return WaringDecomposition(std::move(terms), target);
}

inline json to_json(const ClassificationReport& r) {
    json beta1 = json::object(), beta2 = json::object();
    for (const auto& [d, v] : r.beta1) beta1[std::to_string(d)] = v;
    for (const auto& [d, v] : r.beta2) beta2[std::to_string(d)] = v;
    json out{{"hilbert", to_json(r.hilbert)},
             {"beta1", beta1},
             {"beta2", beta2},
             {"verdict", verdict_name(r.verdict)},
             {"evidence", r.evidence}};
    if (r.certificate) out["certificate"] = to_json(*r.certificate);
    return out;
}

/// One point per line, comma-separated coordinates, '#' starts a comment.
inline PointSet read_point_file(std::istream& in, const FieldSpec& spec) {
    std::vector<LinearForm> pts;
    int vars = -1;
    std::string line;
    while (std::getline(in, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::string trimmed;
        for (char c : line)
            if (!std::isspace(static_cast<unsigned char>(c))) trimmed += c;
        if (trimmed.empty()) continue;
        std::vector<FieldElement> coords;
        std::stringstream ss(trimmed);
        std::string tok;
        while (std::getline(ss, tok, ',')) coords.push_back(parse_field_element(tok, spec));
        if (vars < 0) vars = static_cast<int>(coords.size());
        if (static_cast<int>(coords.size()) != vars)
            throw error(errc::invalid_input, "points have inconsistent coordinate counts");
        pts.emplace_back(std::move(coords), spec);
    }
    if (pts.empty()) throw error(errc::invalid_input, "point file holds no points");
    return PointSet(std::move(pts), vars, spec);
}

inline PointSet read_point_file(const std::string& path, const FieldSpec& spec) {
    std::ifstream in(path);
    if (!in) throw error(errc::invalid_input, "cannot open point file " + path);
    return read_point_file(in, spec);
}

/// One form per line, '#' starts a comment.
inline std::vector<ParsedForm> read_forms_file(std::istream& in, const FieldSpec& spec) {
    std::vector<ParsedForm> out;
    std::string line;
    while (std::getline(in, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        bool blank = true;
        for (char c : line)
            if (!std::isspace(static_cast<unsigned char>(c))) blank = false;
        if (blank) continue;
        out.push_back(parse_form(line, spec));
    }
    return out;
}

inline std::vector<ParsedForm> read_forms_file(const std::string& path, const FieldSpec& spec) {
    std::ifstream in(path);
    if (!in) throw error(errc::invalid_input, "cannot open form file " + path);
    return read_forms_file(in, spec);
}

} // namespace apolar
