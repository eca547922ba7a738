#include "septree/core/state.h"

#include <algorithm>

#include "septree/core/errors.h"

namespace septree {

BranchPath BranchPath::with(Literal lit) const {
	BranchPath p = *this;
	auto code = lit.code();
	auto it = std::lower_bound(p.codes_.begin(), p.codes_.end(), code);
	if (it == p.codes_.end() || *it != code) p.codes_.insert(it, code);
	return p;
}

bool BranchPath::contains(Literal lit) const {
	return std::binary_search(codes_.begin(), codes_.end(), lit.code());
}

bool BranchPath::contains_feature(int f) const {
	return contains({ f, false }) || contains({ f, true });
}

std::size_t BranchPath::hash() const {
	// FNV-1a over the literal codes
	std::size_t h = 1469598103934665603ull;
	for (auto c : codes_) {
		h ^= c + 0x9e3779b9u;
		h *= 1099511628211ull;
	}
	return h;
}

State::State(DatasetPtr data, std::vector<int> rows, BranchPath path)
	: data_(std::move(data)), rows_(std::move(rows)), path_(std::move(path)) {}

State State::root(DatasetPtr data) {
	if (!data) throw ContractError("state: null dataset");
	auto rows = data->all_rows();
	return State(std::move(data), std::move(rows), {});
}

State State::branch(int feature, bool positive) const {
	if (feature < 0 || feature >= data_->feature_count())
		throw ContractError("state: feature " + std::to_string(feature) + " out of range");
	std::vector<int> rows;
	rows.reserve(rows_.size());
	for (int r : rows_)
		if (data_->feature(r, feature) == positive) rows.push_back(r);
	return State(data_, std::move(rows), path_.with({ feature, positive }));
}

} // namespace septree
