#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace septree {

/// Immutable binarized dataset. Features are stored row-major as bytes plus,
/// per row, the list of features that are set. Auxiliary numeric columns
/// (outcomes, propensities, teacher scores, group membership) are kept by name.
class Dataset {
public:
	Dataset() = default;

	/// rows[i] holds the feature bits of instance i. Throws DataError when a
	/// bit is not 0/1, a row has the wrong width, or a label is out of range.
	Dataset(const std::vector<std::vector<std::uint8_t>>& rows, std::vector<int> labels, int label_count,
	        std::map<std::string, std::vector<double>> aux = {});

	std::size_t size() const { return labels_.size(); }
	bool empty() const { return labels_.empty(); }
	int feature_count() const { return feature_count_; }
	int label_count() const { return label_count_; }

	bool feature(int row, int f) const { return bits_[std::size_t(row) * feature_count_ + f] != 0; }
	std::span<const std::uint8_t> row_bits(int row) const {
		return { bits_.data() + std::size_t(row) * feature_count_, std::size_t(feature_count_) };
	}
	std::span<const int> set_features(int row) const {
		return { set_.data() + set_offsets_[row], set_offsets_[row + 1] - set_offsets_[row] };
	}
	int label(int row) const { return labels_[row]; }
	std::span<const int> labels() const { return labels_; }

	bool has_column(const std::string& name) const { return aux_.count(name) != 0; }
	/// Throws DataError when the column is absent.
	std::span<const double> column(const std::string& name) const;
	const std::map<std::string, std::vector<double>>& aux() const { return aux_; }

	std::vector<int> label_counts() const;
	std::vector<int> all_rows() const;

	/// Copy of the selected rows (in the given order); label_count is kept.
	Dataset subset(std::span<const int> rows) const;

private:
	int feature_count_ = 0;
	int label_count_ = 0;
	std::vector<std::uint8_t> bits_;
	std::vector<std::size_t> set_offsets_{ 0 };
	std::vector<int> set_;
	std::vector<int> labels_;
	std::map<std::string, std::vector<double>> aux_;
};

using DatasetPtr = std::shared_ptr<const Dataset>;

} // namespace septree
