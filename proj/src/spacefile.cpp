#include "stratal/spacefile.hpp"

#include <fstream>
#include <sstream>

#include "stratal/fixtures.hpp"

namespace stratal {

namespace {

std::string trim(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    size_t b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

std::vector<std::string> split_ws(const std::string& s) {
    std::vector<std::string> out;
    std::istringstream in(s);
    std::string w;
    while (in >> w) out.push_back(w);
    return out;
}

struct Line {
    int number;
    std::string text;
};

[[noreturn]] void fail(int line, const std::string& what) {
    throw input_error("space file line " + std::to_string(line) + ": " + what);
}

}  // namespace

uint64_t fnv1a(const std::string& data) {
    uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : data) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

Matrix parse_matrix_literal(const std::string& text, int rows, int cols) {
    // [[a,b],[c,d]] with rational entries.
    std::string s;
    for (char c : text)
        if (!isspace(static_cast<unsigned char>(c))) s += c;
    if (s.size() < 2 || s.front() != '[' || s.back() != ']')
        throw input_error("matrix literal must be wrapped in [ ]: " + text);
    std::string body = s.substr(1, s.size() - 2);
    std::vector<std::vector<Rational>> entries;
    size_t i = 0;
    while (i < body.size()) {
        if (body[i] == ',') { ++i; continue; }
        if (body[i] != '[') throw input_error("expected a row at: " + body.substr(i));
        size_t close = body.find(']', i);
        if (close == std::string::npos) throw input_error("unterminated row in " + text);
        std::string row = body.substr(i + 1, close - i - 1);
        std::vector<Rational> vals;
        std::istringstream in(row);
        std::string cell;
        while (std::getline(in, cell, ','))
            if (!trim(cell).empty()) vals.push_back(Rational::parse(trim(cell)));
        entries.push_back(std::move(vals));
        i = close + 1;
    }
    if (rows == 0 || cols == 0) {
        // Zero-sized maps may be written as [] or [[]].
        return Matrix::zero(rows, cols);
    }
    if (static_cast<int>(entries.size()) != rows)
        throw input_error("matrix literal has " + std::to_string(entries.size()) +
                          " rows, expected " + std::to_string(rows));
    Matrix m(rows, cols);
    for (int r = 0; r < rows; ++r) {
        if (static_cast<int>(entries[r].size()) != cols)
            throw input_error("matrix row " + std::to_string(r) + " has " +
                              std::to_string(entries[r].size()) + " entries, expected " +
                              std::to_string(cols));
        for (int c = 0; c < cols; ++c) m.at(r, c) = entries[r][c];
    }
    return m;
}

std::string matrix_to_string(const Matrix& m) {
    std::string out = "[";
    for (int r = 0; r < m.rows(); ++r) {
        out += "[";
        for (int c = 0; c < m.cols(); ++c) {
            out += m.at(r, c).str();
            if (c + 1 < m.cols()) out += ",";
        }
        out += "]";
        if (r + 1 < m.rows()) out += ",";
    }
    return out + "]";
}

ParsedSpace parse_space_file(const std::string& text) {
    // First pass: strip comments, keep line numbers, group into sections.
    std::vector<std::pair<std::string, std::vector<Line>>> sections;
    {
        std::istringstream in(text);
        std::string raw;
        int number = 0;
        while (std::getline(in, raw)) {
            ++number;
            auto hash = raw.find('#');
            if (hash != std::string::npos) raw = raw.substr(0, hash);
            std::string line = trim(raw);
            if (line.empty()) continue;
            if (line.front() == '[') {
                if (line.back() != ']') fail(number, "unterminated section header");
                sections.emplace_back(trim(line.substr(1, line.size() - 2)),
                                      std::vector<Line>{});
            } else {
                if (sections.empty()) fail(number, "content before any section header");
                sections.back().second.push_back(Line{number, line});
            }
        }
    }

    // Poset and strata first.
    std::vector<std::string> elements;
    std::vector<std::pair<std::string, std::string>> relations;
    std::vector<std::string> s_names;
    int dim_d = 0, deg_c = 1;
    bool saw_poset = false, saw_strata = false;
    for (const auto& [head, lines] : sections) {
        if (head == "poset") {
            saw_poset = true;
            for (const auto& l : lines) {
                auto colon = l.text.find(':');
                if (colon == std::string::npos) fail(l.number, "expected key: value");
                std::string key = trim(l.text.substr(0, colon));
                std::string value = trim(l.text.substr(colon + 1));
                if (key == "elements") {
                    elements = split_ws(value);
                } else if (key == "relations") {
                    for (const auto& tok : split_ws(value)) {
                        auto lt = tok.find('<');
                        if (lt == std::string::npos)
                            fail(l.number, "relation must look like x<y: " + tok);
                        relations.emplace_back(tok.substr(0, lt), tok.substr(lt + 1));
                    }
                } else {
                    fail(l.number, "unknown poset key: " + key);
                }
            }
        } else if (head == "strata") {
            saw_strata = true;
            for (const auto& l : lines) {
                auto colon = l.text.find(':');
                if (colon == std::string::npos) fail(l.number, "expected key: value");
                std::string key = trim(l.text.substr(0, colon));
                std::string value = trim(l.text.substr(colon + 1));
                if (key == "S")
                    s_names = split_ws(value);
                else if (key == "d")
                    dim_d = std::stoi(value);
                else if (key == "c")
                    deg_c = std::stoi(value);
                else
                    fail(l.number, "unknown strata key: " + key);
            }
        }
    }
    if (!saw_poset) throw input_error("space file has no [poset] section");
    if (!saw_strata) throw input_error("space file has no [strata] section");
    if (elements.empty()) throw input_error("poset has no elements");

    ParsedSpace out;
    Poset poset(elements, relations);  // auto-closes, validates order axioms
    try {
        out.strat = StratifiedSpace(poset, members_by_name(poset, s_names), dim_d, deg_c);
    } catch (const input_error& e) {
        throw input_error(std::string("strata block invalid: ") + e.what());
    }

    // Named closed sets and sheaves.
    for (const auto& [head, lines] : sections) {
        auto words = split_ws(head);
        if (words.size() == 2 && words[0] == "closed") {
            std::vector<std::string> names;
            for (const auto& l : lines) {
                auto colon = l.text.find(':');
                if (colon == std::string::npos || trim(l.text.substr(0, colon)) != "members")
                    fail(l.number, "closed sections take a single members: line");
                names = split_ws(trim(l.text.substr(colon + 1)));
            }
            try {
                out.closed_sets[words[1]] =
                    Subspace::closed_set(poset, members_by_name(poset, names));
            } catch (const input_error& e) {
                throw input_error("closed set " + words[1] + ": " + e.what());
            }
        } else if (words.size() == 2 && words[0] == "sheaf") {
            std::string carrier = "X";
            std::map<std::string, int> stalks;
            std::vector<std::tuple<int, std::string, std::string>> maps;  // line, rel, literal
            for (const auto& l : lines) {
                auto colon = l.text.find(':');
                if (colon == std::string::npos) fail(l.number, "expected key: value");
                std::string key = trim(l.text.substr(0, colon));
                std::string value = trim(l.text.substr(colon + 1));
                if (key == "on") {
                    carrier = value;
                    if (carrier != "X" && carrier != "X0" && carrier != "S")
                        fail(l.number, "sheaf carrier must be X, X0 or S");
                } else if (key == "stalks") {
                    for (const auto& tok : split_ws(value)) {
                        auto eq = tok.find('=');
                        if (eq == std::string::npos)
                            fail(l.number, "stalks entries look like elt=dim");
                        stalks[tok.substr(0, eq)] = std::stoi(tok.substr(eq + 1));
                    }
                } else if (key.rfind("map ", 0) == 0) {
                    maps.emplace_back(l.number, trim(key.substr(4)), value);
                } else {
                    fail(l.number, "unknown sheaf key: " + key);
                }
            }
            Poset carrier_poset = carrier == "X" ? poset
                                 : carrier == "X0"
                                     ? out.strat.x0_poset()
                                     : out.strat.s_poset();
            std::vector<int> dims(carrier_poset.size(), 0);
            for (const auto& [name, dim] : stalks) {
                dims[carrier_poset.index(name)] = dim;  // throws on unknown elements
            }
            Sheaf sheaf(carrier_poset, dims);
            for (const auto& [line, rel, literal] : maps) {
                auto lt = rel.find('<');
                if (lt == std::string::npos) fail(line, "map key must look like map x<y");
                int a = carrier_poset.index(rel.substr(0, lt));
                int b = carrier_poset.index(rel.substr(lt + 1));
                if (!carrier_poset.covers(a, b))
                    fail(line, rel + " is not a covering relation of the carrier");
                sheaf.rest[{a, b}] = parse_matrix_literal(literal, dims[b], dims[a]);
            }
            if (auto err = sheaf.validate())
                throw input_error("sheaf " + words[1] + ": " + *err);
            out.sheaves[words[1]] = ParsedSheaf{carrier, std::move(sheaf)};
        } else if (head != "poset" && head != "strata") {
            throw input_error("unknown section: [" + head + "]");
        }
    }

    char buf[17];
    snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a(text)));
    out.digest = buf;
    return out;
}

ParsedSpace load_space_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw input_error("cannot open space file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_space_file(ss.str());
}

ParsedSpace builtin_disk_space() {
    return parse_space_file(R"(# built-in disk model
[poset]
elements: s a b c d
relations: s<a s<b a<c a<d b<c b<d

[strata]
S: s
d: 0
c: 1

[closed K_good]
members: s a

[sheaf L1]
on: X0
stalks: a=1 b=1 c=1 d=1
map a<c: [[1]]
map a<d: [[1]]
map b<c: [[1]]
map b<d: [[1]]

[sheaf L2]
on: X0
stalks: a=1 b=1 c=1 d=1
map a<c: [[1]]
map a<d: [[1]]
map b<c: [[1]]
map b<d: [[2]]
)");
}

}  // namespace stratal
