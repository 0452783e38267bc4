// apolar-kit: exact computations around apolarity of cubic forms in
// divided-power algebras: annihilator ideals, Hilbert functions, graded
// Betti numbers, apolarity certificates and Waring decompositions.

#include <apolar/run.hpp>

#include <CLI11.hpp>

#include <iostream>
#include <sstream>
#include <string>

namespace {

std::string read_stdin() {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact apolarity toolkit for cubic forms"};
    app.require_subcommand(1);

    apolar::Command cmd;
    std::string field_text = "q";
    std::string form_text, form_file, points_path, gens_path, lambda_csv, ell_csv;
    int g = 0;
    long long seed = 0;

    auto add_common = [&](CLI::App* sub, bool wants_form) {
        sub->add_option("--field", field_text, "coefficient field: q or f<p>");
        if (wants_form) {
            sub->add_option("--form", form_text, "form expression (reads stdin when absent)");
            sub->add_option("--form-file", form_file, "file holding the form expression");
        }
        sub->add_option("--seed", seed, "seed echoed into reports");
        sub->add_flag("--json", cmd.json_output, "emit a JSON report");
        sub->add_flag("--timing", cmd.timing, "include wall time in the report");
        return sub;
    };

    CLI::App* perp = add_common(app.add_subcommand("perp", "graded pieces of the annihilator"), true);
    perp->add_option("--degree-cap", cmd.degree_cap, "highest degree to compute");

    add_common(app.add_subcommand("hilbert", "Hilbert function of T/f-perp"), true);

    CLI::App* betti = add_common(app.add_subcommand("betti", "graded Betti numbers"), true);
    betti->add_option("--g", g, "genus parameter; implies the almost-minimal cubic");
    betti->add_option("--lambda", lambda_csv, "comma-separated nonzero scalars");
    betti->add_option("--points", points_path, "point file: Betti numbers of the point ideal");
    betti->add_option("--pmax", cmd.p_max, "homological steps (max 3)");
    betti->add_option("--qmax", cmd.q_max, "internal degree window (max 8)");

    CLI::App* check = add_common(app.add_subcommand("check-apolar", "apolarity certificate"), true);
    check->add_option("--points", points_path, "point file")->required();

    CLI::App* waring = add_common(app.add_subcommand("waring", "Waring coefficients or rank"), true);
    waring->add_option("--points", points_path, "solve against these points");
    waring->add_option("--tmax", cmd.t_max, "brute-force rank bound (finite fields)");
    waring->add_option("--budget", cmd.budget, "enumeration budget");

    CLI::App* construct = add_common(app.add_subcommand("construct", "build a standard object"), false);
    construct->add_option("target", cmd.target, "fermat | almost-minimal | frame-points | q-prime")
        ->required();
    construct->add_option("--g", g, "genus parameter")->required();
    construct->add_option("--lambda", lambda_csv, "comma-separated nonzero scalars");
    construct->add_flag("--unit", cmd.include_unit, "include the all-ones point");

    CLI::App* verify = add_common(app.add_subcommand("verify", "verify a structural identity"), true);
    verify->add_option("target", cmd.target, "remark18 | eval-identity | koszul")->required();
    verify->add_option("--g", g, "genus parameter");
    verify->add_option("--lambda", lambda_csv, "comma-separated nonzero scalars");
    verify->add_option("--ell", ell_csv, "linear form coordinates");
    verify->add_option("--d", cmd.socle_degree, "divided-power degree");

    CLI::App* classify = add_common(app.add_subcommand("classify", "structural classification"), true);
    classify->add_option("--budget", cmd.budget, "point search budget");

    CLI::App* socle = add_common(app.add_subcommand("dual-socle", "recover f from an ideal"), false);
    socle->add_option("--gens", gens_path, "file of x-variable generators")->required();
    socle->add_option("--d", cmd.socle_degree, "socle degree");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e); // help text, exit 0
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2; // malformed invocation is an input error
    }

    try {
        cmd.field = apolar::parse_field_spec(field_text);
    } catch (const apolar::error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    cmd.seed = static_cast<std::uint64_t>(seed);
    if (g > 0) cmd.g = g;
    if (!lambda_csv.empty()) cmd.lambda_csv = lambda_csv;
    if (!ell_csv.empty()) cmd.ell_csv = ell_csv;
    if (!points_path.empty()) cmd.points_path = points_path;

    for (CLI::App* sub : app.get_subcommands()) cmd.verb = sub->get_name();

    const bool wants_form = cmd.verb == "perp" || cmd.verb == "hilbert" ||
                            cmd.verb == "check-apolar" || cmd.verb == "waring" ||
                            cmd.verb == "classify" ||
                            (cmd.verb == "betti" && g == 0 && points_path.empty()) ||
                            (cmd.verb == "verify" && cmd.target == "eval-identity");
    if (cmd.verb == "dual-socle") {
        cmd.gens_path = gens_path;
    } else if (!form_text.empty()) {
        cmd.form_text = form_text;
    } else if (!form_file.empty()) {
        std::ifstream in(form_file);
        if (!in) {
            std::cerr << "error: cannot open " << form_file << "\n";
            return 2;
        }
        std::ostringstream ss;
        ss << in.rdbuf();
        cmd.form_text = ss.str();
    } else if (wants_form) {
        cmd.form_text = read_stdin();
    }

    apolar::RunResult result = apolar::run(cmd);
    if (cmd.json_output)
        std::cout << result.report.dump(2) << "\n";
    else
        std::cout << result.text;
    return result.exit_code;
}
