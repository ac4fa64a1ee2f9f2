#include "alcove/io.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>

namespace alcove {

using ordered_json = nlohmann::ordered_json;

OutFormat parse_format(const std::string& s) {
    if (s == "table") return OutFormat::table;
    if (s == "csv") return OutFormat::csv;
    if (s == "json") return OutFormat::json;
    throw IoError("unknown format '" + s + "' (expected table, csv or json)");
}

namespace {

std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

std::string render_table(const Report& r) {
    std::string out;
    for (const auto& [k, v] : r.scalars) out += k + ": " + v + "\n";
    if (!r.columns.empty()) {
        if (!r.scalars.empty()) out += "\n";
        std::vector<std::size_t> width(r.columns.size());
        for (std::size_t c = 0; c < r.columns.size(); ++c) width[c] = r.columns[c].size();
        for (const auto& row : r.rows)
            for (std::size_t c = 0; c < row.size(); ++c) width[c] = std::max(width[c], row[c].size());
        auto line = [&](const std::vector<std::string>& cells) {
            std::string l;
            for (std::size_t c = 0; c < cells.size(); ++c) {
                l += cells[c];
                if (c + 1 < cells.size()) l += std::string(width[c] - cells[c].size() + 2, ' ');
            }
            out += l + "\n";
        };
        line(r.columns);
        for (const auto& row : r.rows) line(row);
    }
    return out;
}

std::string render_csv(const Report& r) {
    std::string out;
    auto line = [&](const std::vector<std::string>& cells) {
        for (std::size_t c = 0; c < cells.size(); ++c) {
            out += csv_escape(cells[c]);
            if (c + 1 < cells.size()) out += ",";
        }
        out += "\n";
    };
    if (!r.columns.empty()) {
        line(r.columns);
        for (const auto& row : r.rows) line(row);
    } else {
        line({"key", "value"});
        for (const auto& [k, v] : r.scalars) line({k, v});
    }
    return out;
}

std::string render_json(const Report& r) {
    ordered_json j;
    ordered_json meta = ordered_json::object();
    for (const auto& [k, v] : r.scalars) meta[k] = v;
    j["meta"] = std::move(meta);
    j["columns"] = r.columns;
    ordered_json rows = ordered_json::array();
    for (const auto& row : r.rows) rows.push_back(row);
    j["rows"] = std::move(rows);
    return j.dump(2) + "\n";
}

ordered_json parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open file '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    try {
        return ordered_json::parse(buf.str());
    } catch (const nlohmann::json::parse_error& e) {
        // nlohmann reports byte positions; recover the line number for the
        // required line diagnostics.
        std::string text = buf.str();
        std::size_t byte = e.byte > 0 ? e.byte - 1 : 0;
        std::size_t line = 1, col = 1;
        for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
            if (text[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        throw IoError("'" + path + "' line " + std::to_string(line) + ", column " +
                      std::to_string(col) + ": " + e.what());
    }
}

const ordered_json& need(const ordered_json& j, const char* key, const std::string& where) {
    if (!j.is_object()) throw IoError(where + ": expected an object");
    auto it = j.find(key);
    if (it == j.end()) throw IoError(where + ": missing field '" + key + "'");
    return *it;
}

int need_int(const ordered_json& j, const std::string& where) {
    if (!j.is_number_integer()) throw IoError(where + ": expected an integer");
    return j.get<int>();
}

Rat rat_from_json(const ordered_json& j, const std::string& where) {
    try {
        if (j.is_number_integer()) return Rat(j.get<long>());
        if (j.is_string()) return rat_parse(j.get<std::string>());
    } catch (const std::exception&) {
    }
    throw IoError(where + ": expected a rational (integer or \"p/q\" string)");
}

Poly poly_from_json(const ordered_json& j, int nvars, const std::string& where) {
    if (!j.is_array()) throw IoError(where + ": expected a term list");
    Poly p(nvars);
    for (std::size_t t = 0; t < j.size(); ++t) {
        std::string here = where + " term " + std::to_string(t);
        const ordered_json& term = j[t];
        if (!term.is_array() || term.size() != 2)
            throw IoError(here + ": expected [exponents, coefficient]");
        const ordered_json& exps = term[0];
        if (!exps.is_array() || exps.size() != static_cast<std::size_t>(nvars))
            throw IoError(here + ": exponent arity != " + std::to_string(nvars));
        std::vector<int> e(static_cast<std::size_t>(nvars));
        for (std::size_t i = 0; i < e.size(); ++i) {
            e[i] = need_int(exps[i], here + " exponent " + std::to_string(i));
            if (e[i] < 0) throw IoError(here + ": negative exponent");
        }
        p.add_term(e, rat_from_json(term[1], here + " coefficient"));
    }
    return p;
}

ordered_json poly_to_json(const Poly& p) {
    ordered_json terms = ordered_json::array();
    for (const auto& [e, c] : p.terms()) {
        ordered_json term = ordered_json::array();
        term.push_back(e);
        term.push_back(rat_str(c));
        terms.push_back(std::move(term));
    }
    return terms;
}

PolyMat polymat_from_json(const ordered_json& j, int nvars, const std::string& where) {
    if (!j.is_array() || j.empty()) throw IoError(where + ": expected a nonempty matrix");
    PolyMat m;
    std::size_t cols = 0;
    for (std::size_t r = 0; r < j.size(); ++r) {
        std::string here = where + " row " + std::to_string(r);
        if (!j[r].is_array()) throw IoError(here + ": expected an array of polynomials");
        std::vector<Poly> row;
        for (std::size_t c = 0; c < j[r].size(); ++c)
            row.push_back(poly_from_json(j[r][c], nvars, here + " col " + std::to_string(c)));
        if (r == 0)
            cols = row.size();
        else if (row.size() != cols)
            throw IoError(here + ": ragged matrix");
        m.push_back(std::move(row));
    }
    return m;
}

ordered_json polymat_to_json(const PolyMat& m) {
    ordered_json rows = ordered_json::array();
    for (const auto& row : m) {
        ordered_json r = ordered_json::array();
        for (const auto& p : row) r.push_back(poly_to_json(p));
        rows.push_back(std::move(r));
    }
    return rows;
}

EquivariantModule module_from_json(const ordered_json& j, const RootDatum& d,
                                   const std::string& where) {
    EquivariantModule m;
    if (j.contains("name")) {
        if (!j["name"].is_string()) throw IoError(where + ".name: expected a string");
        m.name = j["name"].get<std::string>();
    }
    m.nvars = need_int(need(j, "nvars", where), where + ".nvars");
    if (m.nvars <= 0) throw IoError(where + ".nvars: must be positive");
    const ordered_json& degs = need(j, "generator_degrees", where);
    if (!degs.is_array() || degs.empty())
        throw IoError(where + ".generator_degrees: expected a nonempty array");
    for (std::size_t i = 0; i < degs.size(); ++i)
        m.gen_degrees.push_back(
            need_int(degs[i], where + ".generator_degrees[" + std::to_string(i) + "]"));
    const ordered_json& act = need(j, "action", where);
    if (!act.is_array()) throw IoError(where + ".action: expected an array");
    for (std::size_t i = 0; i < act.size(); ++i) {
        std::string here = where + ".action[" + std::to_string(i) + "]";
        const ordered_json& wj = need(act[i], "word", here);
        if (!wj.is_string()) throw IoError(here + ".word: expected a string");
        int w;
        try {
            w = parse_weyl_word(d, wj.get<std::string>());
        } catch (const std::exception& e) {
            throw IoError(here + ".word: " + e.what());
        }
        PolyMat mat = polymat_from_json(need(act[i], "matrix", here), m.nvars, here + ".matrix");
        if (mat.size() != m.rank() || mat[0].size() != m.rank())
            throw IoError(here + ".matrix: size does not match generator count");
        if (!m.action.emplace(w, std::move(mat)).second)
            throw IoError(here + ": duplicate word");
    }
    if (j.contains("resolution")) {
        const ordered_json& res = j["resolution"];
        std::string here = where + ".resolution";
        EquivariantModule::Resolution r;
        const ordered_json& terms = need(res, "terms", here);
        if (!terms.is_array() || terms.size() < 2)
            throw IoError(here + ".terms: expected at least two terms");
        for (std::size_t i = 0; i < terms.size(); ++i)
            r.terms.push_back(
                module_from_json(terms[i], d, here + ".terms[" + std::to_string(i) + "]"));
        const ordered_json& diffs = need(res, "differentials", here);
        if (!diffs.is_array() || diffs.size() + 1 != r.terms.size())
            throw IoError(here + ".differentials: expected one per consecutive term pair");
        for (std::size_t i = 0; i < diffs.size(); ++i)
            r.diffs.push_back(polymat_from_json(
                diffs[i], m.nvars, here + ".differentials[" + std::to_string(i) + "]"));
        m.resolution = std::move(r);
    }
    return m;
}

ordered_json module_to_json(const EquivariantModule& m, const RootDatum& d) {
    ordered_json j;
    j["name"] = m.name;
    j["nvars"] = m.nvars;
    j["generator_degrees"] = m.gen_degrees;
    ordered_json act = ordered_json::array();
    for (const auto& [w, mat] : m.action) {
        ordered_json entry;
        entry["word"] = weyl_word_str(d, w);
        entry["matrix"] = polymat_to_json(mat);
        act.push_back(std::move(entry));
    }
    j["action"] = std::move(act);
    if (m.resolution) {
        ordered_json res;
        ordered_json terms = ordered_json::array();
        for (const auto& t : m.resolution->terms) terms.push_back(module_to_json(t, d));
        res["terms"] = std::move(terms);
        ordered_json diffs = ordered_json::array();
        for (const auto& dm : m.resolution->diffs) diffs.push_back(polymat_to_json(dm));
        res["differentials"] = std::move(diffs);
        j["resolution"] = std::move(res);
    }
    return j;
}

}  // namespace

std::string render_report(const Report& r, OutFormat f) {
    switch (f) {
        case OutFormat::table:
            return render_table(r);
        case OutFormat::csv:
            return render_csv(r);
        case OutFormat::json:
            return render_json(r);
    }
    return {};
}

int parse_weyl_word(const RootDatum& d, const std::string& word) {
    int w = 0;
    std::istringstream in(word);
    std::string tok;
    bool any = false;
    while (in >> tok) {
        any = true;
        if (tok == "e") continue;
        if (tok.size() < 2 || tok[0] != 's')
            throw std::invalid_argument("bad word token '" + tok + "' (expected e or sK)");
        int k;
        try {
            k = std::stoi(tok.substr(1));
        } catch (...) {
            throw std::invalid_argument("bad word token '" + tok + "'");
        }
        if (k < 1 || k > d.rank)
            throw std::invalid_argument("simple index out of range in '" + tok + "'");
        w = d.weyl_mult[w][d.simple_weyl[static_cast<std::size_t>(k - 1)]];
    }
    if (!any) throw std::invalid_argument("empty word (use 'e' for the identity)");
    return w;
}

std::string weyl_word_str(const RootDatum& d, int w) {
    const auto& word = d.weyl_word[static_cast<std::size_t>(w)];
    if (word.empty()) return "e";
    std::string s;
    for (int j : word) {
        if (!s.empty()) s += " ";
        s += "s" + std::to_string(j + 1);
    }
    return s;
}

EquivariantModule load_module_json(const std::string& path, const RootDatum& d) {
    return module_from_json(parse_file(path), d, "module");
}

void save_module_json(const EquivariantModule& m, const RootDatum& d, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write file '" + path + "'");
    out << module_to_json(m, d).dump(2) << "\n";
}

RatMat load_lattice_json(const std::string& path) {
    ordered_json j = parse_file(path);
    const ordered_json& basis = need(j, "basis", "lattice");
    if (!basis.is_array() || basis.empty())
        throw IoError("lattice.basis: expected a nonempty array of rows");
    RatMat rows;
    for (std::size_t r = 0; r < basis.size(); ++r) {
        std::string here = "lattice.basis[" + std::to_string(r) + "]";
        if (!basis[r].is_array()) throw IoError(here + ": expected a row array");
        RatVec row;
        for (std::size_t c = 0; c < basis[r].size(); ++c)
            row.push_back(rat_from_json(basis[r][c], here + "[" + std::to_string(c) + "]"));
        if (r > 0 && row.size() != rows[0].size()) throw IoError(here + ": ragged basis");
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace alcove
