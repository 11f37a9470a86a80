#ifndef CAUSALKIT_DATASET_HPP
#define CAUSALKIT_DATASET_HPP

#include <string>
#include <vector>

#include <Eigen/Dense>

namespace causal {

// Numeric sample matrix with named columns. Invariants, enforced at
// construction and parse time: at least 2 rows, unique trimmed column names,
// every entry finite.
class Dataset {
public:
    Dataset() = default;
    Dataset(std::vector<std::string> columns, Eigen::MatrixXd values);

    int n_rows() const { return static_cast<int>(values_.rows()); }
    int n_cols() const { return static_cast<int>(values_.cols()); }
    const std::vector<std::string>& columns() const { return columns_; }
    const Eigen::MatrixXd& values() const { return values_; }

    int index_of(const std::string& column) const;  // throws StructuralError
    int find_index(const std::string& column) const;  // -1 when absent

    Eigen::VectorXd column(int i) const { return values_.col(i); }

private:
    std::vector<std::string> columns_;
    Eigen::MatrixXd values_;
};

// CSV with a header row. Rejects ragged rows, non-numeric fields, NaN and
// infinity, duplicate or empty column names, and files with fewer than two
// data rows.
Dataset parse_csv(const std::string& text);
Dataset load_csv(const std::string& path);

// Writes with enough digits to round-trip doubles exactly.
std::string to_csv(const Dataset& d);
void save_csv(const std::string& path, const Dataset& d);

}  // namespace causal

#endif
