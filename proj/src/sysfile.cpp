#include "pvss/sysfile.hpp"

#include <iomanip>
#include <sstream>

namespace pvss {

using nlohmann::json;

namespace {

Int json_int(const json& v) {
    if (v.is_number_integer()) return Int(static_cast<long>(v.get<long long>()));
    if (v.is_string()) return Int(v.get<std::string>());  // for entries beyond 64 bits
    throw ParseError("expected an integer matrix entry");
}

IntMatrix parse_matrix(const json& v, const char* what) {
    if (!v.is_array()) throw ParseError(std::string(what) + ": expected an array of rows");
    std::size_t rows = v.size();
    std::size_t cols = rows == 0 ? 0 : v.at(0).size();
    IntMatrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i) {
        const json& row = v.at(i);
        if (!row.is_array() || row.size() != cols)
            throw ParseError(std::string(what) + ": ragged matrix rows");
        for (std::size_t j = 0; j < cols; ++j) m.at(i, j) = json_int(row.at(j));
    }
    return m;
}

FgAbGroup parse_group(const json& v, const char* what) {
    if (!v.is_object()) throw ParseError(std::string(what) + ": expected an object");
    bool inv = v.contains("rank") || v.contains("torsion");
    bool pres = v.contains("presentation");
    if (inv == pres)
        throw ParseError(std::string(what) +
                         ": exactly one of rank/torsion or presentation required");
    if (pres) {
        IntMatrix rel = parse_matrix(v.at("presentation"), what);
        return FgAbGroup(rel.rows(), rel);
    }
    std::size_t rank = v.value("rank", 0ull);
    std::vector<Int> torsion;
    if (v.contains("torsion"))
        for (const json& t : v.at("torsion")) torsion.push_back(json_int(t));
    return FgAbGroup::from_invariants(rank, torsion);
}

PairKey parse_pair_key(const std::string& s) {
    int i = 0, j = 0;
    char a = 0, b = 0, c = 0;
    std::istringstream is(s);
    if (!(is >> a >> i >> b >> j >> c) || a != '(' || b != ',' || c != ')')
        throw ParseError("d2 pairs: keys must look like \"(i,j)\"");
    return {i, j};
}

}  // namespace

ActionSpec parse_system_file(const std::string& text) {
    json root;
    try {
        root = json::parse(text);
    } catch (const json::exception& e) {
        throw ParseError(std::string("not valid JSON: ") + e.what());
    }
    try {
        if (!root.is_object()) throw ParseError("top level must be an object");
        if (root.value("version", 0) != 1) throw ParseError("unsupported or missing version");
        ActionSpec spec;
        spec.n = root.at("n").get<int>();
        spec.k0 = parse_group(root.at("K0"), "K0");
        spec.k1 = parse_group(root.at("K1"), "K1");
        const json& acts = root.at("actions");
        if (!acts.is_array()) throw ParseError("actions: expected an array");
        for (const json& a : acts) {
            IntMatrix m0 = parse_matrix(a.at("on_K0"), "on_K0");
            IntMatrix m1 = parse_matrix(a.at("on_K1"), "on_K1");
            spec.action0.emplace_back(spec.k0, spec.k0, m0);
            spec.action1.emplace_back(spec.k1, spec.k1, m1);
        }
        if (root.contains("flags")) {
            const json& f = root.at("flags");
            spec.k_trivial = f.value("k_trivial", false);
            spec.pointwise_inner = f.value("pointwise_inner", false);
            spec.assume_higher_vanish = f.value("assume_higher_vanish", false);
        }
        if (root.contains("d2") && !root.at("d2").is_null()) {
            const json& d2 = root.at("d2");
            D2Data data;
            if (d2.contains("pairs")) {
                D2Data::PairwiseKTrivial pw;
                for (const auto& [key, val] : d2.at("pairs").items()) {
                    GroupHom q0(spec.k0, spec.k1, parse_matrix(val.at("q0"), "d2 q0"));
                    GroupHom q1(spec.k1, spec.k0, parse_matrix(val.at("q1"), "d2 q1"));
                    pw.deltas.emplace(parse_pair_key(key), std::make_pair(q0, q1));
                }
                data.data = std::move(pw);
            } else {
                D2Data::AmbientN2 am{
                    GroupHom(spec.k0, spec.k1, parse_matrix(d2.at("q0"), "d2 q0")),
                    GroupHom(spec.k1, spec.k0, parse_matrix(d2.at("q1"), "d2 q1"))};
                data.data = std::move(am);
            }
            spec.d2data = std::move(data);
        }
        if (root.contains("names")) {
            const json& nm = root.at("names");
            if (nm.contains("K0"))
                for (const json& s : nm.at("K0")) spec.names0.push_back(s.get<std::string>());
            if (nm.contains("K1"))
                for (const json& s : nm.at("K1")) spec.names1.push_back(s.get<std::string>());
        }
        return spec;
    } catch (const json::exception& e) {
        throw ParseError(std::string("missing or mistyped field: ") + e.what());
    }
}

IntMatrix parse_bare_matrix(const std::string& text) {
    json root;
    try {
        root = json::parse(text);
    } catch (const json::exception& e) {
        throw ParseError(std::string("not valid JSON: ") + e.what());
    }
    return parse_matrix(root, "matrix");
}

json group_json(const FgAbGroup& g) {
    json torsion = json::array();
    for (const Int& t : g.torsion()) torsion.push_back(t.get_str());
    return {{"rank", g.rank()}, {"torsion", torsion}};
}

json matrix_json(const IntMatrix& m) {
    json rows = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(m.at(i, j).get_str());
        rows.push_back(row);
    }
    return rows;
}

json extension_report_json(const ExtensionReport& r) {
    if (r.determined) return {{"determined", group_json(r.group)}};
    json cands = json::array();
    for (const auto& [rank, tor] : r.candidates)
        cands.push_back(group_json(FgAbGroup::from_invariants(rank, tor)));
    return {{"ambiguous", {{"rank", r.rank}, {"candidates", cands}}}};
}

std::string input_hash(const std::string& text) {
    unsigned long long h = 14695981039346656037ull;
    for (unsigned char c : text) {
        h ^= c;
        h *= 1099511628211ull;
    }
    std::ostringstream os;
    os << std::hex << std::setw(16) << std::setfill('0') << h;
    return os.str();
}

json pages_json(const RunResult& run, const std::string& input_text) {
    json pages = json::array();
    for (const BigradedPage& pg : run.pages) {
        json cells = json::array();
        for (const auto& [key, cell] : pg.cells)
            cells.push_back({{"p", key.first},
                             {"q", key.second},
                             {"rank", cell.sq.presented.rank()},
                             {"torsion", group_json(cell.sq.presented)["torsion"]}});
        json diffs = json::array();
        for (const auto& [key, d] : pg.differentials)
            diffs.push_back(
                {{"p", key.first}, {"q", key.second}, {"matrix", matrix_json(d.matrix())}});
        pages.push_back({{"k", pg.k}, {"cells", cells}, {"differentials", diffs}});
    }
    return {{"input", input_hash(input_text)}, {"pages", pages}, {"warnings", run.warnings}};
}

json crossed_json(const CrossedResult& res, const std::string& input_text) {
    return {{"input", input_hash(input_text)},
            {"K0", extension_report_json(res.k0)},
            {"K1", extension_report_json(res.k1)},
            {"warnings", res.warnings}};
}

namespace {

std::string pad(const std::string& s, std::size_t w) {
    return s + std::string(s.size() < w ? w - s.size() : 0, ' ');
}

}  // namespace

std::string render_pages_table(const RunResult& run) {
    std::ostringstream os;
    for (const BigradedPage& pg : run.pages) {
        os << "E_" << pg.k << ":\n";
        std::vector<std::vector<std::string>> grid(2);
        std::size_t width = 1;
        for (int q = 1; q >= 0; --q)
            for (int p = 0; p <= pg.n; ++p) {
                std::string s = pg.presented(p, q).invariant_string();
                grid[1 - q].push_back(s);
                width = std::max(width, s.size());
            }
        std::string sep = "+";
        for (int p = 0; p <= pg.n; ++p) sep += std::string(width + 2, '-') + "+";
        for (int r = 0; r < 2; ++r) {
            os << sep << "\n";
            os << "|";
            for (int p = 0; p <= pg.n; ++p) os << " " << pad(grid[r][p], width) << " |";
            os << "  q=" << (1 - r) << "\n";
        }
        os << sep << "\n ";
        for (int p = 0; p <= pg.n; ++p) os << " " << pad("p=" + std::to_string(p), width) << "  ";
        os << "\n\n";
    }
    for (const std::string& w : run.warnings) os << "warning: " << w << "\n";
    return os.str();
}

std::string render_crossed_table(const CrossedResult& res) {
    std::ostringstream os;
    os << "K0 = " << res.k0.to_string() << "\n";
    os << "K1 = " << res.k1.to_string() << "\n";
    for (const std::string& w : res.warnings) os << "warning: " << w << "\n";
    return os.str();
}

}  // namespace pvss
