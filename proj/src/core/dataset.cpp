#include "septree/core/dataset.h"

#include <cmath>
#include <numeric>

#include "septree/core/errors.h"

namespace septree {

Dataset::Dataset(const std::vector<std::vector<std::uint8_t>>& rows, std::vector<int> labels, int label_count,
                 std::map<std::string, std::vector<double>> aux)
	: label_count_(label_count), labels_(std::move(labels)), aux_(std::move(aux)) {
	if (rows.size() != labels_.size()) throw DataError("dataset: feature rows and labels differ in length");
	if (label_count_ < 1) throw DataError("dataset: label_count must be positive");
	feature_count_ = rows.empty() ? 0 : int(rows.front().size());
	bits_.reserve(rows.size() * feature_count_);
	for (std::size_t r = 0; r < rows.size(); ++r) {
		if (int(rows[r].size()) != feature_count_)
			throw DataError("dataset: row " + std::to_string(r) + " has " + std::to_string(rows[r].size()) +
			                " features, expected " + std::to_string(feature_count_));
		for (int f = 0; f < feature_count_; ++f) {
			std::uint8_t b = rows[r][f];
			if (b > 1)
				throw DataError("dataset: feature value at row " + std::to_string(r) + ", feature " + std::to_string(f) +
				                " is not binary");
			bits_.push_back(b);
			if (b) set_.push_back(f);
		}
		set_offsets_.push_back(set_.size());
		if (labels_[r] < 0 || labels_[r] >= label_count_)
			throw DataError("dataset: label " + std::to_string(labels_[r]) + " at row " + std::to_string(r) +
			                " outside [0, " + std::to_string(label_count_) + ")");
	}
	for (const auto& [name, values] : aux_) {
		if (values.size() != labels_.size())
			throw DataError("dataset: auxiliary column '" + name + "' has wrong length");
		for (double v : values)
			if (!std::isfinite(v)) throw DataError("dataset: auxiliary column '" + name + "' holds a non-finite value");
	}
}

std::span<const double> Dataset::column(const std::string& name) const {
	auto it = aux_.find(name);
	if (it == aux_.end()) throw DataError("dataset: missing column '" + name + "'");
	return it->second;
}

std::vector<int> Dataset::label_counts() const {
	std::vector<int> counts(label_count_, 0);
	for (int k : labels_) ++counts[k];
	return counts;
}

std::vector<int> Dataset::all_rows() const {
	std::vector<int> rows(size());
	std::iota(rows.begin(), rows.end(), 0);
	return rows;
}

Dataset Dataset::subset(std::span<const int> rows) const {
	std::vector<std::vector<std::uint8_t>> bits;
	std::vector<int> labels;
	std::map<std::string, std::vector<double>> aux;
	bits.reserve(rows.size());
	for (int r : rows) {
		auto b = row_bits(r);
		bits.emplace_back(b.begin(), b.end());
		labels.push_back(labels_[r]);
	}
	for (const auto& [name, values] : aux_) {
		auto& out = aux[name];
		out.reserve(rows.size());
		for (int r : rows) out.push_back(values[r]);
	}
	Dataset d(bits, std::move(labels), label_count_, std::move(aux));
	if (rows.empty()) d.feature_count_ = feature_count_;
	return d;
}

} // namespace septree
