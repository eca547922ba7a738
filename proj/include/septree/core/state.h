#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "septree/core/dataset.h"

namespace septree {

/// A signed branching decision: feature f taken positively (x_f = 1) or
/// negatively (x_f = 0). Encoded as 2f + polarity.
struct Literal {
	int feature = 0;
	bool positive = false;

	std::uint32_t code() const { return std::uint32_t(feature) * 2u + (positive ? 1u : 0u); }
	static Literal from_code(std::uint32_t c) { return { int(c / 2u), (c & 1u) != 0 }; }
};

/// Sorted set of branching decisions above a node; paths with the same
/// literals compare equal.
class BranchPath {
public:
	BranchPath() = default;

	BranchPath with(Literal lit) const;
	bool contains(Literal lit) const;
	bool contains_feature(int f) const;
	std::size_t size() const { return codes_.size(); }
	std::span<const std::uint32_t> codes() const { return codes_; }
	std::size_t hash() const;

	friend bool operator==(const BranchPath&, const BranchPath&) = default;

private:
	std::vector<std::uint32_t> codes_;
};

/// What a node-dependent cost or constraint may observe about a node.
struct NodeContext {
	const BranchPath& path;
	std::size_t size;
};

/// A search state: a view (row indices) into the root dataset plus the
/// branch path that produced it. Transitions filter indices and never copy
/// instance payloads.
class State {
public:
	State() = default;
	State(DatasetPtr data, std::vector<int> rows, BranchPath path);

	static State root(DatasetPtr data);

	/// Transition t(s, f) / t(s, f-bar).
	State branch(int feature, bool positive) const;

	const Dataset& data() const { return *data_; }
	const DatasetPtr& data_ptr() const { return data_; }
	std::span<const int> rows() const { return rows_; }
	std::size_t size() const { return rows_.size(); }
	bool empty() const { return rows_.empty(); }
	const BranchPath& path() const { return path_; }
	NodeContext context() const { return { path_, rows_.size() }; }

private:
	DatasetPtr data_;
	std::vector<int> rows_;
	BranchPath path_;
};

} // namespace septree
