#include "pvss/sysfile.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

namespace {

std::string slurp(const std::string& path) {
    if (path == "-") {
        std::ostringstream os;
        os << std::cin.rdbuf();
        return os.str();
    }
    std::ifstream in(path);
    if (!in) throw pvss::ParseError("cannot open file: " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(out_path);
    if (!out) throw std::runtime_error("cannot write: " + out_path);
    out << text;
}

std::pair<pvss::GroupHom, pvss::GroupHom> pv_maps(const pvss::ActionSpec& spec) {
    if (spec.n != 1) throw std::invalid_argument("pv: requires an n = 1 system");
    pvss::validate_spec(spec);
    auto minus_id = [](const pvss::GroupHom& a) {
        return pvss::GroupHom(a.source(), a.target(),
                              a.matrix() - pvss::IntMatrix::identity(a.source().gens()));
    };
    return {minus_id(spec.action0[0]), minus_id(spec.action1[0])};
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"spectral sequence and crossed-product K-theory calculator"};
    app.require_subcommand(1);

    std::string file, format = "table", out_path;
    bool strict = false;

    auto add_common = [&](CLI::App* cmd, bool with_format, bool with_strict) {
        cmd->add_option("file", file, "system description file")->required();
        if (with_format)
            cmd->add_option("--format", format, "table or machine")
                ->check(CLI::IsMember({"table", "machine"}));
        if (with_strict) cmd->add_flag("--strict", strict, "escalate validation warnings");
        cmd->add_option("--out", out_path, "write output to a file instead of stdout");
    };

    auto* pages = app.add_subcommand("pages", "compute and print every page");
    add_common(pages, true, false);
    auto* crossed = app.add_subcommand("crossed", "assemble crossed-product K-theory");
    add_common(crossed, true, true);
    auto* pv = app.add_subcommand("pv", "six-term solve for a single automorphism");
    add_common(pv, true, false);
    auto* coh = app.add_subcommand("cohomology", "group cohomology of the K-modules");
    add_common(coh, true, false);
    auto* snf = app.add_subcommand("snf", "Smith normal form of a bare matrix");
    snf->add_option("file", file, "matrix file, or - for stdin")->default_val("-");
    snf->add_option("--out", out_path, "write output to a file instead of stdout");
    auto* val = app.add_subcommand("validate", "parse and validate a system file");
    add_common(val, false, false);

    CLI11_PARSE(app, argc, argv);

    try {
        std::string text = slurp(file);
        std::ostringstream os;

        if (snf->parsed()) {
            pvss::IntMatrix m = pvss::parse_bare_matrix(text);
            pvss::SmithForm f = pvss::smith_normal_form(m);
            os << "D = " << f.d.to_string() << "\nU = " << f.u.to_string()
               << "\nV = " << f.v.to_string() << "\n";
            emit(os.str(), out_path);
            return 0;
        }

        pvss::ActionSpec spec = pvss::parse_system_file(text);
        spec.strict = strict;

        if (val->parsed()) {
            pvss::validate_spec(spec);
            emit("ok\n", out_path);
        } else if (pages->parsed()) {
            pvss::RunResult run = pvss::run_pages(spec);
            if (format == "machine")
                os << pvss::pages_json(run, text).dump(2) << "\n";
            else
                os << pvss::render_pages_table(run);
            emit(os.str(), out_path);
        } else if (crossed->parsed()) {
            pvss::CrossedResult res = pvss::crossed_product_k(spec);
            if (format == "machine")
                os << pvss::crossed_json(res, text).dump(2) << "\n";
            else
                os << pvss::render_crossed_table(res);
            emit(os.str(), out_path);
        } else if (pv->parsed()) {
            auto [a0, a1] = pv_maps(spec);
            auto [k0, k1] = pvss::six_term_solve(a0, a1);
            pvss::CrossedResult res{k0, k1, {}};
            if (format == "machine")
                os << pvss::crossed_json(res, text).dump(2) << "\n";
            else
                os << pvss::render_crossed_table(res);
            emit(os.str(), out_path);
        } else if (coh->parsed()) {
            pvss::validate_spec(spec);
            for (int q = 0; q < 2; ++q) {
                auto h = pvss::group_cohomology(spec.n, spec.k_group(q), spec.action(q));
                os << "K" << q << ":";
                for (const auto& g : h) os << " " << g.invariant_string() << ";";
                os << "\n";
            }
            emit(os.str(), out_path);
        }
        return 0;
    } catch (const pvss::ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 1;
    } catch (const std::invalid_argument& e) {
        std::cerr << "validation error: " << e.what() << "\n";
        return 2;
    } catch (const pvss::InsufficientDataError& e) {
        std::cerr << "insufficient data: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 4;
    }
}
