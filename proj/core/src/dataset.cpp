#include "causalkit/dataset.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "causalkit/errors.hpp"
#include "causalkit/graph.hpp"  // trim

namespace causal {

Dataset::Dataset(std::vector<std::string> columns, Eigen::MatrixXd values)
    : columns_(std::move(columns)), values_(std::move(values)) {
    if (static_cast<int>(columns_.size()) != values_.cols())
        throw StructuralError("column name count does not match value columns");
    if (values_.rows() < 2) throw DegenerateDataError("dataset needs at least 2 rows");
    std::set<std::string> seen;
    for (auto& c : columns_) {
        c = trim(c);
        if (c.empty()) throw StructuralError("empty column name");
        if (!seen.insert(c).second) throw StructuralError("duplicate column name '" + c + "'");
    }
    if (!values_.allFinite())
        throw DegenerateDataError("dataset contains non-finite values");
}

int Dataset::index_of(const std::string& column) const {
    int i = find_index(column);
    if (i < 0) throw StructuralError("unknown column '" + column + "'");
    return i;
}

int Dataset::find_index(const std::string& column) const {
    std::string t = trim(column);
    for (std::size_t i = 0; i < columns_.size(); ++i)
        if (columns_[i] == t) return static_cast<int>(i);
    return -1;
}

namespace {

std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> out;
    std::string field;
    std::istringstream ss(line);
    while (std::getline(ss, field, ',')) out.push_back(field);
    if (!line.empty() && line.back() == ',') out.push_back("");
    return out;
}

}  // namespace

Dataset parse_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line)) throw ParseError("empty CSV");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::vector<std::string> header = split_fields(line);
    std::size_t ncol = header.size();
    if (ncol == 0) throw ParseError("CSV header has no columns");

    std::vector<double> flat;
    std::size_t nrow = 0;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        auto fields = split_fields(line);
        if (fields.size() != ncol)
            throw ParseError("CSV line " + std::to_string(lineno) + " has " +
                             std::to_string(fields.size()) + " fields, expected " +
                             std::to_string(ncol));
        for (const auto& f : fields) {
            std::size_t pos = 0;
            double v;
            try {
                v = std::stod(f, &pos);
            } catch (const std::exception&) {
                throw ParseError("CSV line " + std::to_string(lineno) +
                                 ": non-numeric field '" + f + "'");
            }
            while (pos < f.size() && (f[pos] == ' ' || f[pos] == '\t')) ++pos;
            if (pos != f.size())
                throw ParseError("CSV line " + std::to_string(lineno) +
                                 ": non-numeric field '" + f + "'");
            if (!std::isfinite(v))
                throw ParseError("CSV line " + std::to_string(lineno) + ": non-finite value");
            flat.push_back(v);
        }
        ++nrow;
    }
    if (nrow < 2) throw ParseError("CSV needs at least 2 data rows");
    Eigen::MatrixXd values(nrow, ncol);
    for (std::size_t r = 0; r < nrow; ++r)
        for (std::size_t c = 0; c < ncol; ++c) values(r, c) = flat[r * ncol + c];
    try {
        return Dataset(std::move(header), std::move(values));
    } catch (const CausalError& e) {
        throw ParseError(e.what());
    }
}

Dataset load_csv(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open CSV file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    try {
        return parse_csv(ss.str());
    } catch (const ParseError& e) {
        throw ParseError(path + ": " + e.what());
    }
}

std::string to_csv(const Dataset& d) {
    std::ostringstream out;
    for (int c = 0; c < d.n_cols(); ++c) {
        if (c) out << ',';
        out << d.columns()[c];
    }
    out << '\n';
    char buf[64];
    for (int r = 0; r < d.n_rows(); ++r) {
        for (int c = 0; c < d.n_cols(); ++c) {
            if (c) out << ',';
            std::snprintf(buf, sizeof(buf), "%.17g", d.values()(r, c));
            out << buf;
        }
        out << '\n';
    }
    return out.str();
}

void save_csv(const std::string& path, const Dataset& d) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write CSV file '" + path + "'");
    out << to_csv(d);
    if (!out) throw IoError("short write to '" + path + "'");
}

}  // namespace causal
