#include "cobweb/csv.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

namespace cobweb {

namespace {

std::vector<std::string_view> split_lines(std::string_view text) {
    std::vector<std::string_view> lines;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t end = text.find('\n', start);
        if (end == std::string_view::npos) end = text.size();
        std::string_view line = text.substr(start, end - start);
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        lines.push_back(line);
        if (end == text.size()) break;
        start = end + 1;
    }
    while (!lines.empty() && lines.back().empty()) lines.pop_back();
    return lines;
}

std::string trim(std::string_view s) {
    std::size_t b = 0, e = s.size();
    while (b < e && (s[b] == ' ' || s[b] == '\t')) ++b;
    while (e > b && (s[e - 1] == ' ' || s[e - 1] == '\t')) --e;
    return std::string(s.substr(b, e - b));
}

// Splits one delimited line; supports double-quoted fields with "" escapes.
std::vector<std::string> split_fields(std::string_view line, char delim, std::size_t row) {
    std::vector<std::string> fields;
    std::string cur;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    cur += '"';
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                cur += c;
            }
        } else if (c == '"' && trim(cur).empty()) {
            quoted = true;
            cur.clear();
        } else if (c == delim) {
            fields.push_back(trim(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    if (quoted) throw ParseError("row " + std::to_string(row) + ": unterminated quote", row);
    fields.push_back(trim(cur));
    return fields;
}

bool parse_full_double(std::string_view s, double& out) {
    if (s.empty()) return false;
    const char* first = s.data();
    const char* last = s.data() + s.size();
    auto [ptr, ec] = std::from_chars(first, last, out);
    return ec == std::errc() && ptr == last && std::isfinite(out);
}

std::vector<std::string> observed_values(const std::vector<std::vector<std::string>>& rows,
                                         std::size_t col) {
    std::vector<std::string> out;
    for (const auto& r : rows)
        if (std::find(out.begin(), out.end(), r[col]) == out.end()) out.push_back(r[col]);
    return out;
}

std::vector<AttributeDecl> parse_sidecar(std::string_view text, char delim,
                                         const std::vector<std::string>& header) {
    std::vector<AttributeDecl> decls;
    std::size_t lineno = 0;
    for (std::string_view line : split_lines(text)) {
        ++lineno;
        if (line.empty() || line.front() == '#') continue;
        auto fields = split_fields(line, delim, lineno);
        if (fields.size() < 2)
            throw ParseError("schema line " + std::to_string(lineno) +
                                 ": expected 'name,kind[,labels...]'",
                             lineno);
        AttributeDecl decl;
        decl.name = fields[0];
        if (fields[1] == "nominal") {
            decl.kind = AttrKind::Nominal;
            decl.values.assign(fields.begin() + 2, fields.end());
        } else if (fields[1] == "numeric") {
            decl.kind = AttrKind::Numeric;
            if (fields.size() > 2)
                throw ParseError("schema line " + std::to_string(lineno) +
                                     ": numeric column '" + decl.name + "' lists labels",
                                 lineno);
        } else {
            throw ParseError("schema line " + std::to_string(lineno) + ": unknown kind '" +
                                 fields[1] + "' (expected nominal or numeric)",
                             lineno);
        }
        decls.push_back(std::move(decl));
    }
    if (decls.size() != header.size())
        throw ParseError("schema declares " + std::to_string(decls.size()) +
                             " columns but the data header has " + std::to_string(header.size()),
                         0);
    for (std::size_t j = 0; j < decls.size(); ++j)
        if (decls[j].name != header[j])
            throw ParseError("schema column " + std::to_string(j + 1) + " is '" + decls[j].name +
                                 "' but the data header says '" + header[j] + "'",
                             0, j + 1);
    return decls;
}

}  // namespace

Dataset load_csv_text(std::string_view text, std::optional<std::string_view> sidecar_text,
                      const LoadOptions& opt) {
    const auto lines = split_lines(text);
    if (lines.empty()) throw ParseError("empty input: missing header row", 1);
    const auto header = split_fields(lines[0], opt.delimiter, 1);

    std::vector<std::vector<std::string>> rows;
    rows.reserve(lines.size() - 1);
    for (std::size_t r = 1; r < lines.size(); ++r) {
        if (lines[r].empty())
            throw ParseError("row " + std::to_string(r + 1) + ": blank line inside data", r + 1);
        auto fields = split_fields(lines[r], opt.delimiter, r + 1);
        if (fields.size() != header.size())
            throw ParseError("row " + std::to_string(r + 1) + ": expected " +
                                 std::to_string(header.size()) + " fields, found " +
                                 std::to_string(fields.size()),
                             r + 1);
        for (std::size_t c = 0; c < fields.size(); ++c)
            if (fields[c].empty())
                throw ParseError("row " + std::to_string(r + 1) + ", column '" + header[c] +
                                     "': empty value",
                                 r + 1, c + 1);
        rows.push_back(std::move(fields));
    }

    std::vector<AttributeDecl> decls;
    if (sidecar_text) {
        decls = parse_sidecar(*sidecar_text, opt.delimiter, header);
    } else {
        for (std::size_t c = 0; c < header.size(); ++c) {
            AttributeDecl decl;
            decl.name = header[c];
            double unused;
            const bool numeric = std::all_of(rows.begin(), rows.end(),
                                             [&](const std::vector<std::string>& r) {
                                                 return parse_full_double(r[c], unused);
                                             });
            decl.kind = numeric ? AttrKind::Numeric : AttrKind::Nominal;
            decls.push_back(std::move(decl));
        }
    }

    if (opt.force_all_nominal)
        for (auto& d : decls)
            if (d.kind == AttrKind::Numeric) {
                d.kind = AttrKind::Nominal;
                d.values.clear();
            }
    for (std::size_t c = 0; c < decls.size(); ++c)
        if (decls[c].kind == AttrKind::Nominal && decls[c].values.empty())
            decls[c].values = observed_values(rows, c);

    Dataset data;
    try {
        data.schema = Schema(std::move(decls));
    } catch (const std::invalid_argument& e) {
        throw ParseError(e.what(), 1);
    }

    for (std::size_t r = 0; r < rows.size(); ++r) {
        Instance inst;
        inst.values.reserve(rows[r].size());
        for (std::size_t c = 0; c < rows[r].size(); ++c) {
            if (data.schema.attribute(c).kind == AttrKind::Numeric) {
                double v;
                if (!parse_full_double(rows[r][c], v))
                    throw ParseError("row " + std::to_string(r + 2) + ", column '" +
                                         data.schema.attribute(c).name + "': '" + rows[r][c] +
                                         "' is not a finite number",
                                     r + 2, c + 1);
                inst.values.emplace_back(v);
            } else {
                inst.values.emplace_back(rows[r][c]);
            }
        }
        if (auto err = validate_instance(data.schema, inst))
            throw ParseError("row " + std::to_string(r + 2) + ": " + err->message, r + 2);
        data.instances.push_back(std::move(inst));
    }
    return data;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return std::move(buf).str();
}

Dataset load_csv(const std::string& path, const std::optional<std::string>& sidecar_path,
                 const LoadOptions& opt) {
    const std::string text = read_file(path);
    std::optional<std::string> sidecar;
    if (sidecar_path) sidecar = read_file(*sidecar_path);
    std::optional<std::string_view> view;
    if (sidecar) view = *sidecar;
    return load_csv_text(text, view, opt);
}

Partition load_partition_text(std::string_view text, std::size_t n_instances,
                              std::vector<std::string>* labels_out, char delimiter) {
    const auto lines = split_lines(text);
    if (lines.empty()) throw ParseError("empty partition file: missing header", 1);
    const auto header = split_fields(lines[0], delimiter, 1);
    if (header.size() != 2 || header[0] != "id" || header[1] != "cluster")
        throw ParseError("partition header must be 'id,cluster'", 1);

    std::vector<std::string> labels;
    std::vector<std::vector<std::size_t>> clusters;
    std::vector<bool> assigned(n_instances, false);
    for (std::size_t r = 1; r < lines.size(); ++r) {
        auto fields = split_fields(lines[r], delimiter, r + 1);
        if (fields.size() != 2)
            throw ParseError("row " + std::to_string(r + 1) + ": expected 'id,cluster'", r + 1);
        std::size_t id = 0;
        const auto [ptr, ec] =
            std::from_chars(fields[0].data(), fields[0].data() + fields[0].size(), id);
        if (ec != std::errc() || ptr != fields[0].data() + fields[0].size())
            throw ParseError("row " + std::to_string(r + 1) + ": '" + fields[0] +
                                 "' is not an instance id",
                             r + 1, 1);
        if (id >= n_instances)
            throw ParseError("UnknownInstanceId: row " + std::to_string(r + 1) + " names id " +
                                 std::to_string(id) + " but the dataset has " +
                                 std::to_string(n_instances) + " instances",
                             r + 1, 1);
        if (assigned[id])
            throw ParseError("row " + std::to_string(r + 1) + ": instance " + std::to_string(id) +
                                 " is assigned to more than one cluster",
                             r + 1, 1);
        assigned[id] = true;
        if (fields[1].empty())
            throw ParseError("row " + std::to_string(r + 1) + ": empty cluster label", r + 1, 2);
        auto it = std::find(labels.begin(), labels.end(), fields[1]);
        std::size_t k;
        if (it == labels.end()) {
            k = labels.size();
            labels.push_back(fields[1]);
            clusters.emplace_back();
        } else {
            k = static_cast<std::size_t>(it - labels.begin());
        }
        clusters[k].push_back(id);
    }
    for (std::size_t id = 0; id < n_instances; ++id)
        if (!assigned[id])
            throw ParseError("UnassignedInstance: instance " + std::to_string(id) +
                                 " has no cluster",
                             0);

    Partition p;
    p.clusters = std::move(clusters);
    for (auto& c : p.clusters) std::sort(c.begin(), c.end());
    require_partition(p);
    if (labels_out) *labels_out = std::move(labels);
    return p;
}

Partition load_partition(const std::string& path, std::size_t n_instances,
                         std::vector<std::string>* labels_out, char delimiter) {
    return load_partition_text(read_file(path), n_instances, labels_out, delimiter);
}

}  // namespace cobweb
