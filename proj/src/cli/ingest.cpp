#include <algorithm>
#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

#include "septree/cli/cli.h"
#include "septree/core/errors.h"
#include "septree/core/random.h"

namespace septree::cli {

namespace {

std::string trim(std::string s) {
	auto not_space = [](unsigned char c) { return !std::isspace(c); };
	s.erase(s.begin(), std::find_if(s.begin(), s.end(), not_space));
	s.erase(std::find_if(s.rbegin(), s.rend(), not_space).base(), s.end());
	return s;
}

std::vector<std::string> split(const std::string& line, char delim) {
	std::vector<std::string> out;
	std::string cell;
	std::istringstream ss(line);
	while (std::getline(ss, cell, delim)) out.push_back(trim(cell));
	if (!line.empty() && line.back() == delim) out.emplace_back();
	return out;
}

std::string where(const std::string& source, std::size_t row, const std::string& column) {
	return source + ": row " + std::to_string(row) + ", column '" + column + "'";
}

double parse_double(const std::string& cell, const std::string& at) {
	double v = 0.0;
	auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
	if (ec != std::errc() || ptr != cell.data() + cell.size() || cell.empty())
		throw DataError(at + ": expected a number, got '" + cell + "'");
	return v;
}

int parse_label(const std::string& cell, const std::string& at) {
	int v = 0;
	auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
	if (ec != std::errc() || ptr != cell.data() + cell.size() || cell.empty() || v < 0)
		throw DataError(at + ": expected a non-negative integer label, got '" + cell + "'");
	return v;
}

std::string format_threshold(double t) {
	std::ostringstream ss;
	ss << t;
	return ss.str();
}

enum class Role { kFeature, kLabel, kAux, kContinuous };

} // namespace

std::vector<double> equal_frequency_thresholds(std::vector<double> values, int bins) {
	if (bins < 2) throw DataError("binning needs at least 2 bins");
	if (values.empty()) throw DataError("binning an empty column");
	std::sort(values.begin(), values.end());
	std::vector<double> cuts;
	const std::size_t N = values.size();
	for (int i = 1; i < bins; ++i) cuts.push_back(values[std::size_t(i) * N / std::size_t(bins)]);
	return cuts;
}

Table ingest(const std::string& path, const ColumnSchema& schema) {
	std::ifstream in(path);
	if (!in) throw DataError("cannot open '" + path + "'");
	return ingest(in, schema, path);
}

Table ingest(std::istream& in, const ColumnSchema& schema, const std::string& source) {
	std::string line;
	std::vector<std::string> header;
	while (std::getline(in, line)) {
		if (!trim(line).empty()) {
			header = split(trim(line), schema.delimiter);
			break;
		}
	}
	if (header.empty()) throw DataError(source + ": empty file");

	std::set<std::string> seen;
	for (const auto& h : header)
		if (!seen.insert(h).second) throw DataError(source + ": duplicate column '" + h + "'");
	auto require = [&](const std::string& name) {
		if (!seen.count(name)) throw DataError(source + ": missing column '" + name + "'");
	};
	require(schema.label_column);
	for (const auto& c : schema.aux_columns) require(c);
	for (const auto& c : schema.continuous_columns) require(c);

	std::vector<Role> roles;
	for (const auto& h : header) {
		Role r = Role::kFeature;
		if (h == schema.label_column) r = Role::kLabel;
		else if (std::count(schema.continuous_columns.begin(), schema.continuous_columns.end(), h)) r = Role::kContinuous;
		else if (std::count(schema.aux_columns.begin(), schema.aux_columns.end(), h)) r = Role::kAux;
		else
			for (const auto& p : schema.aux_prefixes)
				if (!p.empty() && h.rfind(p, 0) == 0) r = Role::kAux;
		roles.push_back(r);
	}

	std::vector<std::vector<std::uint8_t>> bits;
	std::vector<int> labels;
	std::map<std::string, std::vector<double>> aux;
	std::map<std::string, std::vector<double>> continuous;
	std::size_t row = 0;
	while (std::getline(in, line)) {
		if (trim(line).empty()) continue;
		++row;
		auto cells = split(trim(line), schema.delimiter);
		if (cells.size() != header.size())
			throw DataError(source + ": row " + std::to_string(row) + " has " + std::to_string(cells.size()) +
			                " cells, expected " + std::to_string(header.size()));
		std::vector<std::uint8_t> b;
		for (std::size_t c = 0; c < cells.size(); ++c) {
			const auto& cell = cells[c];
			switch (roles[c]) {
			case Role::kLabel: labels.push_back(parse_label(cell, where(source, row, header[c]))); break;
			case Role::kAux: aux[header[c]].push_back(parse_double(cell, where(source, row, header[c]))); break;
			case Role::kContinuous: continuous[header[c]].push_back(parse_double(cell, where(source, row, header[c]))); break;
			case Role::kFeature:
				if (cell == "0") b.push_back(0);
				else if (cell == "1") b.push_back(1);
				else throw DataError(where(source, row, header[c]) + ": feature values must be 0 or 1, got '" + cell + "'");
				break;
			}
		}
		bits.push_back(std::move(b));
	}
	if (labels.empty()) throw DataError(source + ": no data rows");

	// Binned columns become threshold features in header order.
	std::vector<std::string> names;
	std::vector<std::vector<std::uint8_t>> out_bits(bits.size());
	std::size_t binary_pos = 0;
	for (std::size_t c = 0; c < header.size(); ++c) {
		if (roles[c] == Role::kFeature) {
			names.push_back(header[c]);
			for (std::size_t r = 0; r < bits.size(); ++r) out_bits[r].push_back(bits[r][binary_pos]);
			++binary_pos;
		} else if (roles[c] == Role::kContinuous) {
			const auto& col = continuous[header[c]];
			for (double t : equal_frequency_thresholds(col, schema.bins)) {
				names.push_back(header[c] + ">=" + format_threshold(t));
				for (std::size_t r = 0; r < col.size(); ++r) out_bits[r].push_back(col[r] >= t ? 1 : 0);
			}
		}
	}
	int label_count = std::max(2, *std::max_element(labels.begin(), labels.end()) + 1);
	Table t;
	t.data = std::make_shared<const Dataset>(out_bits, std::move(labels), label_count, std::move(aux));
	t.feature_names = std::move(names);
	return t;
}

std::pair<std::vector<int>, std::vector<int>> split_rows(std::size_t n, double test_fraction, std::uint64_t seed) {
	if (!(test_fraction >= 0.0 && test_fraction < 1.0)) throw DataError("test fraction must be in [0, 1)");
	std::vector<int> rows(n);
	for (std::size_t i = 0; i < n; ++i) rows[i] = int(i);
	std::size_t test = std::size_t(double(n) * test_fraction + 0.5);
	if (test == 0) return { rows, {} };
	if (test >= n) throw DataError("test fraction leaves no training rows");
	Rng rng(seed);
	rng.shuffle(std::span<int>(rows));
	std::vector<int> te(rows.begin(), rows.begin() + std::ptrdiff_t(test));
	std::vector<int> tr(rows.begin() + std::ptrdiff_t(test), rows.end());
	std::sort(te.begin(), te.end());
	std::sort(tr.begin(), tr.end());
	return { tr, te };
}

} // namespace septree::cli
