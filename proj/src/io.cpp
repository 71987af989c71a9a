#include "magsq/io.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include <json.hpp>

namespace magsq {

using nlohmann::json;

Format parse_format(std::string_view name) {
    if (name == "json") return Format::json;
    if (name == "csv") return Format::csv;
    if (name == "latex") return Format::latex;
    if (name == "pretty") return Format::pretty;
    throw invalid_input("unknown format '" + std::string(name) + "'");
}

std::string format_element(const GroupElement& e, bool parenthesize_scalars) {
    const auto& c = e.coords();
    if (c.size() == 1 && !parenthesize_scalars) return std::to_string(c[0]);
    std::string out = "(";
    for (std::size_t i = 0; i < c.size(); ++i) {
        if (i) out += ',';
        out += std::to_string(c[i]);
    }
    out += ')';
    return out;
}

std::string group_literal(const AbelianGroup& g) {
    std::string out;
    for (std::size_t i = 0; i < g.moduli().size(); ++i) {
        if (i) out += ',';
        out += std::to_string(g.moduli()[i]);
    }
    return out;
}

GroupPtr parse_group_literal(std::string_view text) {
    std::vector<i64> moduli;
    std::size_t pos = 0;
    while (pos < text.size()) {
        std::size_t comma = text.find(',', pos);
        std::string_view tok = text.substr(pos, comma == std::string_view::npos
                                                   ? std::string_view::npos
                                                   : comma - pos);
        std::size_t a = tok.find_first_not_of(" \t");
        std::size_t b = tok.find_last_not_of(" \t");
        if (a == std::string_view::npos)
            throw invalid_input("empty modulus in group literal");
        tok = tok.substr(a, b - a + 1);
        i64 v = 0;
        for (char ch : tok) {
            if (!std::isdigit(static_cast<unsigned char>(ch)))
                throw invalid_input("bad modulus '" + std::string(tok) + "' in group literal");
            v = v * 10 + (ch - '0');
            if (v > (i64{1} << 40)) throw invalid_input("modulus out of range");
        }
        moduli.push_back(v);
        if (comma == std::string_view::npos) break;
        pos = comma + 1;
    }
    return make_group(std::move(moduli));
}

namespace {

json element_json(const GroupElement& e) { return json(e.coords()); }

json report_json(const VerificationReport& r) {
    json j;
    j["classification"] = to_string(r.classification);
    j["bijective"] = r.bijective;
    json rows = json::array(), cols = json::array();
    for (const auto& s : r.row_sums) rows.push_back(element_json(s));
    for (const auto& s : r.col_sums) cols.push_back(element_json(s));
    j["row_sums"] = rows;
    j["col_sums"] = cols;
    if (r.diag_sum) j["diag_sum"] = element_json(*r.diag_sum);
    if (r.anti_diag_sum) j["anti_diag_sum"] = element_json(*r.anti_diag_sum);
    if (r.magic_sum) j["magic_sum"] = element_json(*r.magic_sum);
    return j;
}

std::string to_json_text(const GroupArray& a) {
    json j;
    j["group"] = a.group()->moduli();
    j["rows"] = a.rows();
    j["cols"] = a.cols();
    json entries = json::array();
    for (std::size_t i = 0; i < a.rows(); ++i) {
        json row = json::array();
        for (std::size_t k = 0; k < a.cols(); ++k) row.push_back(element_json(a.at(i, k)));
        entries.push_back(row);
    }
    j["entries"] = entries;
    j["report"] = report_json(verify(a));
    return j.dump(2) + "\n";
}

std::string to_csv_text(const GroupArray& a) {
    std::string out = "# group: " + group_literal(*a.group()) + "\n";
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t k = 0; k < a.cols(); ++k) {
            if (k) out += ';';
            out += format_element(a.at(i, k));
        }
        out += '\n';
    }
    return out;
}

std::string to_latex_text(const GroupArray& a) {
    std::string out = "\\begin{tabular}{|";
    for (std::size_t k = 0; k < a.cols(); ++k) out += "c|";
    out += "}\n\\hline\n";
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t k = 0; k < a.cols(); ++k) {
            if (k) out += " & ";
            out += format_element(a.at(i, k), false);
        }
        out += "\\\\\n\\hline\n";
    }
    out += "\\end{tabular}\n";
    return out;
}

std::string to_pretty_text(const GroupArray& a) {
    std::vector<std::string> cells;
    std::size_t w = 0;
    for (const auto& e : a.cells()) {
        cells.push_back(format_element(e, false));
        w = std::max(w, cells.back().size());
    }
    std::ostringstream out;
    out << "Z(" << group_literal(*a.group()) << ")  " << a.rows() << "x" << a.cols() << "\n";
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const std::string& s = cells[i * a.cols() + k];
            out << std::string(w - s.size(), ' ') << s << (k + 1 < a.cols() ? "  " : "");
        }
        out << "\n";
    }
    return out.str();
}

GroupArray from_json_text(std::string_view text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw parse_error(std::string("bad json: ") + e.what(), 1, e.byte);
    }
    try {
        GroupPtr g = make_group(j.at("group").get<std::vector<i64>>());
        std::size_t rows = j.at("rows").get<std::size_t>();
        std::size_t cols = j.at("cols").get<std::size_t>();
        std::vector<std::vector<i64>> coords;
        coords.reserve(rows * cols);
        const json& entries = j.at("entries");
        for (const json& row : entries)
            for (const json& cell : row) coords.push_back(cell.get<std::vector<i64>>());
        return array_from_coords(g, rows, cols, coords);
    } catch (const json::exception& e) {
        throw parse_error(std::string("bad json array: ") + e.what(), 1, 1);
    }
}

std::vector<i64> parse_cell(std::string_view cell, std::size_t line_no, std::size_t col_no) {
    std::size_t a = cell.find_first_not_of(" \t");
    std::size_t b = cell.find_last_not_of(" \t");
    if (a == std::string_view::npos)
        throw parse_error("empty cell", line_no, col_no);
    cell = cell.substr(a, b - a + 1);
    if (cell.size() < 2 || cell.front() != '(' || cell.back() != ')')
        throw parse_error("cell is not of the form (c1,...,ct)", line_no, col_no);
    cell = cell.substr(1, cell.size() - 2);
    std::vector<i64> coords;
    std::size_t pos = 0;
    while (true) {
        std::size_t comma = cell.find(',', pos);
        std::string tok(cell.substr(pos, comma == std::string_view::npos ? std::string_view::npos
                                                                         : comma - pos));
        tok.erase(std::remove_if(tok.begin(), tok.end(),
                                 [](char c) { return c == ' ' || c == '\t'; }),
                  tok.end());
        if (tok.empty() || !std::all_of(tok.begin(), tok.end(), [](char c) {
                return std::isdigit(static_cast<unsigned char>(c)) || c == '-';
            }))
            throw parse_error("bad coordinate '" + tok + "'", line_no, col_no);
        coords.push_back(std::stoll(tok));
        if (comma == std::string_view::npos) break;
        pos = comma + 1;
    }
    return coords;
}

GroupArray from_csv_text(std::string_view text) {
    GroupPtr g;
    std::vector<std::vector<i64>> coords;
    std::size_t rows = 0, cols = 0;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t nl = text.find('\n', pos);
        std::string_view line = text.substr(pos, nl == std::string_view::npos
                                                     ? std::string_view::npos
                                                     : nl - pos);
        ++line_no;
        pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
        while (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        if (line.find_first_not_of(" \t") == std::string_view::npos) continue;
        if (line.front() == '#') {
            std::size_t colon = line.find(':');
            if (line.find("group") != std::string_view::npos && colon != std::string_view::npos)
                g = parse_group_literal(line.substr(colon + 1));
            continue;
        }
        std::vector<std::string_view> parts;
        std::size_t p = 0;
        while (true) {
            std::size_t sep = line.find(';', p);
            parts.push_back(line.substr(p, sep == std::string_view::npos ? std::string_view::npos
                                                                         : sep - p));
            if (sep == std::string_view::npos) break;
            p = sep + 1;
        }
        if (cols == 0)
            cols = parts.size();
        else if (parts.size() != cols)
            throw parse_error("row has " + std::to_string(parts.size()) + " cells, expected " +
                                  std::to_string(cols),
                              line_no, 1);
        for (std::size_t k = 0; k < parts.size(); ++k)
            coords.push_back(parse_cell(parts[k], line_no, k + 1));
        ++rows;
    }
    if (!g) throw parse_error("missing '# group: ...' header", 1, 1);
    if (rows == 0) throw parse_error("no array rows", line_no, 1);
    return array_from_coords(g, rows, cols, coords);
}

} // namespace

std::string serialize(const GroupArray& a, Format f) {
    switch (f) {
        case Format::json: return to_json_text(a);
        case Format::csv: return to_csv_text(a);
        case Format::latex: return to_latex_text(a);
        case Format::pretty: return to_pretty_text(a);
    }
    throw invalid_input("unknown format");
}

GroupArray parse(std::string_view text, Format f) {
    switch (f) {
        case Format::json: return from_json_text(text);
        case Format::csv: return from_csv_text(text);
        default: throw invalid_input("only json and csv can be parsed");
    }
}

Format sniff_format(std::string_view text) {
    std::size_t a = text.find_first_not_of(" \t\r\n");
    if (a != std::string_view::npos && text[a] == '{') return Format::json;
    return Format::csv;
}

} // namespace magsq
