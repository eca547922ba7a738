#pragma once

#include <memory>
#include <span>
#include <string>
#include <vector>

#include "septree/core/dataset.h"

namespace septree {

/// Immutable binary decision tree. Subtrees are shared, so copying a Tree and
/// building a branch over existing subtrees are O(1).
/// Instances with x_feature = 1 go right, the rest go left.
class Tree {
public:
	/// A default-constructed tree is Leaf(0).
	Tree();

	static Tree leaf(int label);
	static Tree branch(int feature, Tree left, Tree right);

	bool is_leaf() const { return node_->feature < 0; }
	int label() const { return node_->label; }
	int feature() const { return node_->feature; }
	Tree left() const { return Tree(node_->left); }
	Tree right() const { return Tree(node_->right); }

	int depth() const { return node_->depth; }
	int branch_count() const { return node_->branches; }
	int max_feature() const { return node_->max_feature; }

	int predict(std::span<const std::uint8_t> bits) const;
	int predict(const Dataset& data, int row) const { return predict(data.row_bits(row)); }

	/// Compact JSON: {"feature":i,"left":...,"right":...} or {"label":k}.
	std::string serialize() const;
	/// Inverse of serialize(); throws DataError on malformed input.
	static Tree parse(const std::string& json);

	/// Human-readable indented rendering; features print by name when given.
	std::string render(const std::vector<std::string>& feature_names = {}) const;

	/// Preference for equal-valued solutions: fewer branching nodes, then the
	/// lexicographically smaller serialization.
	static bool preferred(const Tree& a, const Tree& b);

	friend bool operator==(const Tree& a, const Tree& b);

private:
	struct Node {
		int feature = -1;
		int label = 0;
		int depth = 0;
		int branches = 0;
		int max_feature = -1;
		std::shared_ptr<const Node> left, right;
	};
	explicit Tree(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

	std::shared_ptr<const Node> node_;
};

} // namespace septree
