#pragma once
// File interchange and report rendering.
//
// Documents are JSON. A scalar is always the canonical 5-integer array
// [a_re, a_im, b_re, b_im, e]; a matrix is an array of rows of scalars.
//   family:    {order, complex, label, a_mats, b_mats[, provenance]}
//   code:      {p, nt, k, label, grid}, each cell an array of terms
//              [symbol (1-based), "R"|"I", scalar]
//   transform: {left, right}, each an array of [column, sign] per row
//   seed:      {label, m_mats, n_mats} with exactly three 4x4 matrices each
// Loaders reject anything malformed with MalformedFileError and unreadable
// paths with BadPathError; save(load(x)) reproduces x bit-exactly.
//
// Delimited report forms are the stable machine contract; the text forms
// are for people and may change.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "ostbc/code.hpp"
#include "ostbc/construct.hpp"
#include "ostbc/design.hpp"
#include "ostbc/equivalence.hpp"
#include "ostbc/errors.hpp"
#include "ostbc/exact.hpp"
#include "ostbc/power.hpp"
#include "ostbc/simulate.hpp"

namespace ostbc {

using Json = nlohmann::json;

namespace detail {

inline const Json& need(const Json& j, const char* key, const std::string& what) {
    if (!j.is_object() || !j.contains(key))
        throw MalformedFileError(what + ": missing field '" + key + "'");
    return j.at(key);
}

inline std::size_t need_size(const Json& j, const char* key, const std::string& what) {
    const Json& v = need(j, key, what);
    if (!v.is_number_integer() || v.get<long long>() < 0)
        throw MalformedFileError(what + ": field '" + key + "' must be a non-negative integer");
    return v.get<std::size_t>();
}

inline std::string need_string(const Json& j, const char* key, const std::string& what) {
    const Json& v = need(j, key, what);
    if (!v.is_string())
        throw MalformedFileError(what + ": field '" + key + "' must be a string");
    return v.get<std::string>();
}

inline bool need_bool(const Json& j, const char* key, const std::string& what) {
    const Json& v = need(j, key, what);
    if (!v.is_boolean())
        throw MalformedFileError(what + ": field '" + key + "' must be a boolean");
    return v.get<bool>();
}

inline Json scalar_to_json(const ExactScalar& s) {
    const auto a = s.to_array();
    return Json::array({a[0], a[1], a[2], a[3], a[4]});
}

inline ExactScalar scalar_from_json(const Json& j, const std::string& what) {
    if (!j.is_array() || j.size() != 5)
        throw MalformedFileError(what + ": scalar must be a 5-integer array");
    std::array<Int, 5> v{};
    for (std::size_t i = 0; i < 5; ++i) {
        if (!j[i].is_number_integer())
            throw MalformedFileError(what + ": scalar components must be integers");
        v[i] = j[i].get<Int>();
    }
    try {
        return ExactScalar::from_array(v);
    } catch (const std::exception& e) {
        throw MalformedFileError(what + ": " + e.what());
    }
}

inline Json matrix_to_json(const ExactMatrix& m) {
    Json rows = Json::array();
    for (std::size_t r = 0; r < m.rows(); ++r) {
        Json row = Json::array();
        for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(scalar_to_json(m.at(r, c)));
        rows.push_back(std::move(row));
    }
    return rows;
}

inline ExactMatrix matrix_from_json(const Json& j, const std::string& what) {
    if (!j.is_array() || j.empty() || !j[0].is_array() || j[0].empty())
        throw MalformedFileError(what + ": matrix must be a non-empty array of rows");
    const std::size_t rows = j.size(), cols = j[0].size();
    ExactMatrix m = ExactMatrix::zero(rows, cols);
    for (std::size_t r = 0; r < rows; ++r) {
        if (!j[r].is_array() || j[r].size() != cols)
            throw MalformedFileError(what + ": ragged matrix rows");
        for (std::size_t c = 0; c < cols; ++c) m.at(r, c) = scalar_from_json(j[r][c], what);
    }
    return m;
}

inline std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw BadPathError("cannot open for reading: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    if (in.bad()) throw BadPathError("read failed: " + path);
    return ss.str();
}

inline void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw BadPathError("cannot open for writing: " + path);
    out << text;
    out.flush();
    if (!out.good()) throw BadPathError("write failed: " + path);
}

inline Json parse_document(const std::string& text, const std::string& context) {
    Json j = Json::parse(text, nullptr, /*allow_exceptions=*/false);
    if (j.is_discarded()) throw MalformedFileError(context + ": invalid document syntax");
    return j;
}

} // namespace detail

// ---------------------------------------------------------------- family

inline Json family_to_json(const DispersionFamily& fam) {
    Json j;
    j["order"] = fam.order;
    j["complex"] = fam.complex_entries;
    j["label"] = fam.label;
    Json a = Json::array(), b = Json::array();
    for (const ExactMatrix& m : fam.a_mats) a.push_back(detail::matrix_to_json(m));
    for (const ExactMatrix& m : fam.b_mats) b.push_back(detail::matrix_to_json(m));
    j["a_mats"] = std::move(a);
    j["b_mats"] = std::move(b);
    if (fam.provenance)
        j["provenance"] = Json{{"input_label", fam.provenance->input_label},
                               {"seed_label", fam.provenance->seed_label},
                               {"construction", fam.provenance->construction}};
    return j;
}

inline DispersionFamily family_from_json(const Json& j) {
    const std::string what = "family document";
    DispersionFamily fam;
    fam.order = detail::need_size(j, "order", what);
    if (fam.order == 0) throw MalformedFileError(what + ": order must be positive");
    fam.complex_entries = detail::need_bool(j, "complex", what);
    fam.label = detail::need_string(j, "label", what);
    const Json& a = detail::need(j, "a_mats", what);
    const Json& b = detail::need(j, "b_mats", what);
    if (!a.is_array() || !b.is_array())
        throw MalformedFileError(what + ": a_mats and b_mats must be arrays");
    auto load_side = [&](const Json& side, std::vector<ExactMatrix>& out) {
        for (const Json& m : side) {
            ExactMatrix mm = detail::matrix_from_json(m, what);
            if (mm.rows() != fam.order || mm.cols() != fam.order)
                throw MalformedFileError(what + ": matrices must be order x order");
            out.push_back(std::move(mm));
        }
    };
    load_side(a, fam.a_mats);
    load_side(b, fam.b_mats);
    if (fam.variables() == 0) throw MalformedFileError(what + ": family carries no matrices");
    if (!fam.complex_entries && family_has_complex_entries(fam))
        throw MalformedFileError(what + ": complex entries in a family flagged real");
    if (j.contains("provenance")) {
        const Json& p = j.at("provenance");
        Provenance pr;
        pr.input_label = detail::need_string(p, "input_label", what);
        pr.seed_label = detail::need_string(p, "seed_label", what);
        pr.construction = detail::need_string(p, "construction", what);
        fam.provenance = std::move(pr);
    }
    return fam;
}

// ------------------------------------------------------------------ code

inline Json code_to_json(const SymbolicCode& code) {
    Json j;
    j["p"] = code.p;
    j["nt"] = code.nt;
    j["k"] = code.k;
    j["label"] = code.label;
    Json grid = Json::array();
    for (std::size_t r = 0; r < code.p; ++r) {
        Json row = Json::array();
        for (std::size_t c = 0; c < code.nt; ++c) {
            Json cell = Json::array();
            for (const Term& t : code.grid[r][c].terms())
                cell.push_back(Json::array({t.symbol + 1, t.part == Part::R ? "R" : "I",
                                            detail::scalar_to_json(t.coeff)}));
            row.push_back(std::move(cell));
        }
        grid.push_back(std::move(row));
    }
    j["grid"] = std::move(grid);
    return j;
}

inline SymbolicCode code_from_json(const Json& j) {
    const std::string what = "code document";
    SymbolicCode code;
    code.p = detail::need_size(j, "p", what);
    code.nt = detail::need_size(j, "nt", what);
    code.k = detail::need_size(j, "k", what);
    if (code.p == 0 || code.nt == 0)
        throw MalformedFileError(what + ": p and nt must be positive");
    code.label = detail::need_string(j, "label", what);
    const Json& grid = detail::need(j, "grid", what);
    if (!grid.is_array() || grid.size() != code.p)
        throw MalformedFileError(what + ": grid must have p rows");
    code.grid.assign(code.p, std::vector<LinearForm>(code.nt));
    for (std::size_t r = 0; r < code.p; ++r) {
        if (!grid[r].is_array() || grid[r].size() != code.nt)
            throw MalformedFileError(what + ": grid rows must have nt cells");
        for (std::size_t c = 0; c < code.nt; ++c) {
            const Json& cell = grid[r][c];
            if (!cell.is_array())
                throw MalformedFileError(what + ": cell must be an array of terms");
            for (const Json& term : cell) {
                if (!term.is_array() || term.size() != 3 || !term[0].is_number_integer() ||
                    !term[1].is_string())
                    throw MalformedFileError(what + ": term must be [symbol, part, scalar]");
                const long long sym = term[0].get<long long>();
                if (sym < 1 || std::size_t(sym) > code.k)
                    throw MalformedFileError(what + ": symbol index out of range");
                const std::string part = term[1].get<std::string>();
                if (part != "R" && part != "I")
                    throw MalformedFileError(what + ": part must be R or I");
                code.grid[r][c].add(std::size_t(sym) - 1,
                                    part == "R" ? Part::R : Part::I,
                                    detail::scalar_from_json(term[2], what));
            }
        }
    }
    return code;
}

// ------------------------------------------------------------- transform

inline Json transform_to_json(const MonomialTransform& tr) {
    if (!is_signed_permutation(tr.left) || !is_signed_permutation(tr.right))
        throw std::invalid_argument("transform_to_json: factors must be signed permutations");
    auto side = [](const ExactMatrix& m) {
        Json rows = Json::array();
        for (std::size_t r = 0; r < m.rows(); ++r)
            for (std::size_t c = 0; c < m.cols(); ++c)
                if (!m.at(r, c).is_zero())
                    rows.push_back(Json::array({c, m.at(r, c) == ExactScalar::one() ? 1 : -1}));
        return rows;
    };
    Json j;
    j["left"] = side(tr.left);
    j["right"] = side(tr.right);
    return j;
}

inline MonomialTransform transform_from_json(const Json& j) {
    const std::string what = "transform document";
    auto side = [&](const Json& rows) {
        if (!rows.is_array() || rows.empty())
            throw MalformedFileError(what + ": side must be a non-empty array of rows");
        const std::size_t n = rows.size();
        ExactMatrix m = ExactMatrix::zero(n, n);
        for (std::size_t r = 0; r < n; ++r) {
            const Json& row = rows[r];
            if (!row.is_array() || row.size() != 2 || !row[0].is_number_integer() ||
                !row[1].is_number_integer())
                throw MalformedFileError(what + ": row must be [column, sign]");
            const long long col = row[0].get<long long>(), sign = row[1].get<long long>();
            if (col < 0 || std::size_t(col) >= n)
                throw MalformedFileError(what + ": column index out of range");
            if (sign != 1 && sign != -1)
                throw MalformedFileError(what + ": sign must be 1 or -1");
            m.at(r, std::size_t(col)) = sign == 1 ? ExactScalar::one() : -ExactScalar::one();
        }
        if (!is_signed_permutation(m))
            throw MalformedFileError(what + ": rows do not form a signed permutation");
        return m;
    };
    MonomialTransform tr;
    tr.left = side(detail::need(j, "left", what));
    tr.right = side(detail::need(j, "right", what));
    return tr;
}

// ------------------------------------------------------- expansion seeds

inline Json mn_seed_to_json(const MnSeed& seed) {
    Json j;
    j["label"] = seed.label;
    Json m = Json::array(), n = Json::array();
    for (const ExactMatrix& x : seed.m_mats) m.push_back(detail::matrix_to_json(x));
    for (const ExactMatrix& x : seed.n_mats) n.push_back(detail::matrix_to_json(x));
    j["m_mats"] = std::move(m);
    j["n_mats"] = std::move(n);
    return j;
}

inline MnSeed mn_seed_from_json(const Json& j) {
    const std::string what = "expansion seed document";
    MnSeed s;
    s.label = detail::need_string(j, "label", what);
    const Json& m = detail::need(j, "m_mats", what);
    const Json& n = detail::need(j, "n_mats", what);
    if (!m.is_array() || m.size() != 3 || !n.is_array() || n.size() != 3)
        throw MalformedFileError(what + ": need exactly three m and three n matrices");
    for (std::size_t i = 0; i < 3; ++i) {
        s.m_mats[i] = detail::matrix_from_json(m[i], what);
        s.n_mats[i] = detail::matrix_from_json(n[i], what);
        if (s.m_mats[i].rows() != 4 || s.m_mats[i].cols() != 4 || s.n_mats[i].rows() != 4 ||
            s.n_mats[i].cols() != 4)
            throw MalformedFileError(what + ": seed matrices must be 4 x 4");
    }
    return s;
}

// ----------------------------------------------------------------- files

inline void save_family(const DispersionFamily& fam, const std::string& path) {
    detail::write_text_file(path, family_to_json(fam).dump(2) + "\n");
}
inline DispersionFamily load_family(const std::string& path) {
    return family_from_json(detail::parse_document(detail::read_text_file(path), path));
}

inline void save_code(const SymbolicCode& code, const std::string& path) {
    detail::write_text_file(path, code_to_json(code).dump(2) + "\n");
}
inline SymbolicCode load_code(const std::string& path) {
    return code_from_json(detail::parse_document(detail::read_text_file(path), path));
}

inline void save_transform(const MonomialTransform& tr, const std::string& path) {
    detail::write_text_file(path, transform_to_json(tr).dump(2) + "\n");
}
inline MonomialTransform load_transform(const std::string& path) {
    return transform_from_json(detail::parse_document(detail::read_text_file(path), path));
}

inline void save_mn_seed(const MnSeed& seed, const std::string& path) {
    detail::write_text_file(path, mn_seed_to_json(seed).dump(2) + "\n");
}
inline MnSeed load_mn_seed(const std::string& path) {
    return mn_seed_from_json(detail::parse_document(detail::read_text_file(path), path));
}

// ------------------------------------------------------- text rendering

inline std::string fmt_double(double v) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    if (v == std::floor(v) && std::abs(v) < 1e15)
        return std::to_string(static_cast<long long>(v));
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

inline std::string matrix_text(const ExactMatrix& m, const std::string& indent = "  ") {
    std::vector<std::vector<std::string>> cells(m.rows(), std::vector<std::string>(m.cols()));
    std::vector<std::size_t> width(m.cols(), 0);
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = 0; c < m.cols(); ++c) {
            cells[r][c] = m.at(r, c).str();
            width[c] = std::max(width[c], cells[r][c].size());
        }
    std::string out;
    for (std::size_t r = 0; r < m.rows(); ++r) {
        out += indent + "[";
        for (std::size_t c = 0; c < m.cols(); ++c) {
            if (c) out += "  ";
            out += std::string(width[c] - cells[r][c].size(), ' ') + cells[r][c];
        }
        out += "]\n";
    }
    return out;
}

inline std::string grid_text(const std::vector<std::vector<LinearForm>>& grid,
                             const std::string& indent = "  ") {
    if (grid.empty()) return "";
    const std::size_t cols = grid.front().size();
    std::vector<std::vector<std::string>> cells(grid.size(), std::vector<std::string>(cols));
    std::vector<std::size_t> width(cols, 0);
    for (std::size_t r = 0; r < grid.size(); ++r)
        for (std::size_t c = 0; c < cols; ++c) {
            cells[r][c] = grid[r][c].str();
            width[c] = std::max(width[c], cells[r][c].size());
        }
    std::string out;
    for (std::size_t r = 0; r < grid.size(); ++r) {
        out += indent + "[";
        for (std::size_t c = 0; c < cols; ++c) {
            if (c) out += "  ";
            out += std::string(width[c] - cells[r][c].size(), ' ') + cells[r][c];
        }
        out += "]\n";
    }
    return out;
}

inline std::string code_text(const SymbolicCode& code) {
    std::string out = code.label + ": " + std::to_string(code.p) + " slots x " +
                      std::to_string(code.nt) + " antennas, " + std::to_string(code.k) +
                      " symbols, rate " + rate(code).str() + "\n";
    return out + grid_text(code.grid);
}

inline std::string family_text(const DispersionFamily& fam) {
    std::string out = fam.label + ": order " + std::to_string(fam.order) + ", s = " +
                      std::to_string(fam.s()) + ", t = " + std::to_string(fam.t()) +
                      (fam.complex_entries ? ", complex entries" : "") + "\n";
    if (fam.provenance)
        out += "built by " + fam.provenance->construction + " from " +
               fam.provenance->input_label +
               (fam.provenance->seed_label.empty() ? ""
                                                   : " with " + fam.provenance->seed_label) +
               "\n";
    for (std::size_t i = 0; i < fam.a_mats.size(); ++i)
        out += "A[" + std::to_string(i + 1) + "]:\n" + matrix_text(fam.a_mats[i]);
    for (std::size_t q = 0; q < fam.b_mats.size(); ++q)
        out += "B[" + std::to_string(q + 1) + "]:\n" + matrix_text(fam.b_mats[q]);
    return out;
}

inline std::string mn_seed_text(const MnSeed& seed) {
    std::string out = seed.label + ": order-4 expansion seed\n";
    for (std::size_t i = 0; i < 3; ++i)
        out += "M[" + std::to_string(i + 1) + "]:\n" + matrix_text(seed.m_mats[i]);
    for (std::size_t i = 0; i < 3; ++i)
        out += "N[" + std::to_string(i + 1) + "]:\n" + matrix_text(seed.n_mats[i]);
    return out;
}

inline std::string verify_report_text(const VerifyReport& rep) {
    if (rep.passed) {
        std::string out = "pass";
        if (rep.gram_scale) out += " (gram scale " + rep.gram_scale->str() + ")";
        return out + "\n";
    }
    std::string out = "fail: " + std::to_string(rep.violations.size()) + " violation(s)\n";
    for (const Violation& v : rep.violations) {
        out += "  [" + v.condition + "] " + v.note + "\n";
        out += matrix_text(v.offender, "    ");
    }
    return out;
}

inline std::string block_pattern_text(const BlockPattern& bp) {
    if (bp.id == BlockPatternId::None) return "no recognized block pattern\n";
    std::string out = "pattern " + to_string(bp.id) + "\n";
    out += "P:\n" + grid_text(bp.p);
    out += "Q:\n" + grid_text(bp.q);
    out += "R:\n" + grid_text(bp.r);
    out += "S:\n" + grid_text(bp.s);
    return out;
}

inline std::string power_report_text(const PowerReport& r) {
    std::string out;
    out += "peak/ave  " + fmt_double(r.peak_ave);
    if (r.peak_ave_exact) out += "  (exactly " + r.peak_ave_exact->str() + ")";
    out += "\nave/min   " + (r.ave_min_infinite ? "inf" : fmt_double(r.ave_min));
    if (!r.ave_min_infinite && r.ave_min_exact)
        out += "  (exactly " + r.ave_min_exact->str() + ")";
    out += "\np_o       " + r.p_o.str();
    out += "\ntype sum  " + r.type_sum.str();
    out += "\nconstant type: ";
    out += r.guideline_constant_type ? "yes" : "no";
    out += "\ntype sum >= 2n: ";
    out += r.guideline_sum_ge_2n ? "yes" : "no";
    return out + "\n";
}

inline std::string table_text(const TableReport& rep) {
    std::string out =
        "table " + std::to_string(rep.table) + " (order " + std::to_string(rep.order) + ")\n";
    for (const TableRow& row : rep.rows) {
        out += row.code + " [" + row.constellation + "]\n";
        if (row.computed) {
            const PowerReport& r = *row.computed;
            out += "  computed:  peak/ave " + fmt_double(r.peak_ave) + ", ave/min " +
                   (r.ave_min_infinite ? "inf" : fmt_double(r.ave_min)) + ", p_o " +
                   r.p_o.str() + ", type sum " + r.type_sum.str();
            if (r.peak_ave_exact && r.ave_min_exact && !r.ave_min_infinite)
                out += "  [exactly " + r.peak_ave_exact->str() + " and " +
                       r.ave_min_exact->str() + "]";
            out += "\n";
        }
        out += "  published: peak/ave " + fmt_double(row.published_peak_ave) + ", ave/min " +
               fmt_double(row.published_ave_min) + ", p_o " + row.published_p_o.str();
        if (row.published_type_sum) out += ", type sum " + row.published_type_sum->str();
        if (row.published_sum_ge_2n)
            out += std::string(", type sum >= 2n: ") + (*row.published_sum_ge_2n ? "yes" : "no");
        out += "\n";
        out += std::string("  match: ") +
               (row.reference_only ? "reference-only" : (row.match ? "yes" : "no")) + "\n";
        if (!row.note.empty()) out += "  note: " + row.note + "\n";
    }
    return out;
}

inline std::string ber_text(const BerResult& res) {
    std::string out = res.code_label + ": seed " + std::to_string(res.seed) + ", " +
                      std::to_string(res.bits_per_codeword) + " bits per codeword\n";
    for (const BerPoint& p : res.points) {
        char buf[160];
        std::snprintf(buf, sizeof buf,
                      "  %6.2f dB: ber %.6e (%llu errors / %llu codewords, std err %.3e)\n",
                      p.snr_db, p.ber, static_cast<unsigned long long>(p.bit_errors),
                      static_cast<unsigned long long>(p.trials), p.std_err);
        out += buf;
    }
    return out;
}

// ------------------------------------------------------ delimited forms

inline std::string metrics_delimited_header() {
    return "code,constellation-spec,peak_ave,ave_min,p_o,type_sum,guideline1,guideline2,"
           "paper_peak_ave,paper_ave_min,paper_p_o,match-flag";
}

namespace detail {

inline std::string metrics_cells(const PowerReport& r) {
    return fmt_double(r.peak_ave) + "," + (r.ave_min_infinite ? "inf" : fmt_double(r.ave_min)) +
           "," + fmt_double(r.p_o.to_double()) + "," + fmt_double(r.type_sum.to_double()) + "," +
           (r.guideline_constant_type ? "yes" : "no") + "," +
           (r.guideline_sum_ge_2n ? "yes" : "no");
}

} // namespace detail

inline std::string metrics_delimited_row(const TableRow& row) {
    std::string s = row.code + "," + row.constellation + ",";
    s += row.computed ? detail::metrics_cells(*row.computed) : "NA,NA,NA,NA,NA,NA";
    s += "," + fmt_double(row.published_peak_ave) + "," + fmt_double(row.published_ave_min) +
         "," + fmt_double(row.published_p_o.to_double()) + ",";
    s += row.reference_only ? "reference-only" : (row.match ? "yes" : "no");
    return s;
}

inline std::string metrics_delimited(const TableReport& rep) {
    std::string out = metrics_delimited_header() + "\n";
    for (const TableRow& row : rep.rows) out += metrics_delimited_row(row) + "\n";
    return out;
}

/// One delimited row for a code outside the published tables: the
/// published-value columns carry the NA token.
inline std::string metrics_delimited_single(const std::string& code_label,
                                            const std::string& constellation_spec,
                                            const PowerReport& r) {
    return metrics_delimited_header() + "\n" + code_label + "," + constellation_spec + "," +
           detail::metrics_cells(r) + ",NA,NA,NA,NA\n";
}

inline std::string ber_delimited(const BerResult& res) {
    std::string out = "snr_db,trials,bit_errors,ber,std_err,code,seed\n";
    for (const BerPoint& p : res.points) {
        char num[64];
        out += fmt_double(p.snr_db) + "," + std::to_string(p.trials) + "," +
               std::to_string(p.bit_errors) + ",";
        std::snprintf(num, sizeof num, "%.10g", p.ber);
        out += num;
        std::snprintf(num, sizeof num, "%.10g", p.std_err);
        out += std::string(",") + num + "," + res.code_label + "," + std::to_string(res.seed) +
               "\n";
    }
    return out;
}

} // namespace ostbc
