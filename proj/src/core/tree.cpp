#include "septree/core/tree.h"

#include <algorithm>
#include <json.hpp>
#include <sstream>

#include "septree/core/errors.h"

namespace septree {

namespace {

void serialize_into(const Tree& t, std::string& out) {
	if (t.is_leaf()) {
		out += "{\"label\":" + std::to_string(t.label()) + "}";
		return;
	}
	out += "{\"feature\":" + std::to_string(t.feature()) + ",\"left\":";
	serialize_into(t.left(), out);
	out += ",\"right\":";
	serialize_into(t.right(), out);
	out += "}";
}

Tree from_json(const nlohmann::json& j) {
	if (!j.is_object()) throw DataError("tree: expected a JSON object");
	if (j.contains("label")) {
		if (!j["label"].is_number_integer() || j["label"].get<int>() < 0) throw DataError("tree: invalid label");
		return Tree::leaf(j["label"].get<int>());
	}
	if (!j.contains("feature") || !j.contains("left") || !j.contains("right"))
		throw DataError("tree: branch node needs feature, left and right");
	if (!j["feature"].is_number_integer() || j["feature"].get<int>() < 0) throw DataError("tree: invalid feature");
	return Tree::branch(j["feature"].get<int>(), from_json(j["left"]), from_json(j["right"]));
}

void render_into(const Tree& t, int indent, const std::vector<std::string>& names, std::ostringstream& os) {
	std::string pad(std::size_t(indent) * 2, ' ');
	if (t.is_leaf()) {
		os << pad << "label " << t.label() << '\n';
		return;
	}
	if (std::size_t(t.feature()) < names.size()) os << pad << "if not " << names[t.feature()] << ":\n";
	else os << pad << "if x[" << t.feature() << "] = 0:\n";
	render_into(t.left(), indent + 1, names, os);
	os << pad << "else:\n";
	render_into(t.right(), indent + 1, names, os);
}

} // namespace

Tree::Tree() : Tree(leaf(0)) {}

Tree Tree::leaf(int label) {
	auto n = std::make_shared<Node>();
	n->label = label;
	return Tree(std::move(n));
}

Tree Tree::branch(int feature, Tree left, Tree right) {
	if (feature < 0) throw ContractError("tree: negative feature index");
	auto n = std::make_shared<Node>();
	n->feature = feature;
	n->depth = 1 + std::max(left.depth(), right.depth());
	n->branches = 1 + left.branch_count() + right.branch_count();
	n->max_feature = std::max({ feature, left.max_feature(), right.max_feature() });
	n->left = std::move(left.node_);
	n->right = std::move(right.node_);
	return Tree(std::move(n));
}

int Tree::predict(std::span<const std::uint8_t> bits) const {
	const Node* n = node_.get();
	while (n->feature >= 0) {
		if (std::size_t(n->feature) >= bits.size()) throw ContractError("tree: feature index exceeds instance width");
		n = bits[n->feature] ? n->right.get() : n->left.get();
	}
	return n->label;
}

std::string Tree::serialize() const {
	std::string out;
	serialize_into(*this, out);
	return out;
}

Tree Tree::parse(const std::string& json) {
	nlohmann::json j;
	try {
		j = nlohmann::json::parse(json);
	} catch (const nlohmann::json::exception& e) {
		throw DataError(std::string("tree: ") + e.what());
	}
	return from_json(j);
}

std::string Tree::render(const std::vector<std::string>& feature_names) const {
	std::ostringstream os;
	render_into(*this, 0, feature_names, os);
	return os.str();
}

bool Tree::preferred(const Tree& a, const Tree& b) {
	if (a.branch_count() != b.branch_count()) return a.branch_count() < b.branch_count();
	if (a.node_ == b.node_) return false;
	return a.serialize() < b.serialize();
}

bool operator==(const Tree& a, const Tree& b) {
	if (a.node_ == b.node_) return true;
	if (a.is_leaf() != b.is_leaf()) return false;
	if (a.is_leaf()) return a.label() == b.label();
	return a.feature() == b.feature() && a.left() == b.left() && a.right() == b.right();
}

} // namespace septree
