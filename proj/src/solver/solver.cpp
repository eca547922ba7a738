#include "septree/solver/solver.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include "septree/core/errors.h"
#include "septree/core/random.h"
#include "septree/depth2/depth2.h"

namespace septree {

namespace {

constexpr std::size_t kArchivePerKey = 2;

int full_budget(int d) { return d >= 30 ? std::numeric_limits<int>::max() : (1 << d) - 1; }

// Alg. 1 clamping: n <= 2^d - 1, then d <= n.
void clamp(int& d, int& n) {
	n = std::min(n, full_budget(d));
	d = std::min(d, n);
}

std::vector<SolutionValue> values_of(std::span<const FrontEntry> entries) {
	std::vector<SolutionValue> out;
	out.reserve(entries.size());
	for (const auto& e : entries) out.push_back(e.value);
	return out;
}

} // namespace

void SolverConfig::validate() const {
	if (max_depth < 0) throw ContractError("max_depth must be non-negative");
	if (max_depth > 20) throw ContractError("max_depth above 20 is not supported");
	if (!(time_limit >= 0.0)) throw ContractError("time_limit must be non-negative");
	if (min_leaf_support < 0) throw ContractError("min_leaf_support must be non-negative");
}

SolverConfig SolverConfig::normalized() const {
	validate();
	SolverConfig c = *this;
	if (c.max_nodes < 0) c.max_nodes = full_budget(c.max_depth);
	clamp(c.max_depth, c.max_nodes);
	return c;
}

std::size_t CacheKeyHash::operator()(const CacheKey& k) const {
	std::size_t h = k.path.hash();
	h ^= std::size_t(k.depth) * 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
	h ^= std::size_t(k.budget) * 0xc2b2ae3d27d4eb4full + (h << 6) + (h >> 2);
	return h;
}

std::vector<FrontEntry> leaf_solve(const State& state, const OptimizationTask& task, std::span<const SolutionValue> ub,
                                   int min_leaf_support) {
	if (state.size() < std::size_t(min_leaf_support)) return {};
	auto costs = task.leaf_costs(state);
	std::vector<FrontEntry> entries;
	entries.reserve(costs.size());
	for (int k = 0; k < int(costs.size()); ++k) entries.push_back({ costs[k], Tree::leaf(k) });
	return opt(std::move(entries), state.context(), task, ub);
}

Solver::Solver(TaskPtr task, SolverConfig config) : task_(std::move(task)), config_(config.normalized()) {
	if (!task_) throw ContractError("solver: null task");
	bounds_ = config_.use_bounds;
	subtraction_ = bounds_ && task_->traits().has_subtraction;
	similarity_ = bounds_ && config_.use_cache && config_.min_leaf_support == 0 && similarity_applicable(*task_);
	depth2_ = config_.use_depth2 && depth2_applicable(*task_);
}

void Solver::clear_cache() {
	cache_.clear();
	archive_.clear();
}

const CacheEntry* Solver::cached(const BranchPath& path, int d, int n) const {
	auto it = cache_.find(CacheKey{ path, d, n });
	return it == cache_.end() ? nullptr : &it->second;
}

bool Solver::out_of_time() {
	if (timed_out_) return true;
	if (has_deadline_ && std::chrono::steady_clock::now() >= deadline_) timed_out_ = true;
	return timed_out_;
}

SolveResult Solver::solve() {
	if (task_->data().empty()) throw ContractError("solve: dataset is empty");
	auto start = std::chrono::steady_clock::now();
	has_deadline_ = config_.time_limit > 0.0;
	if (has_deadline_)
		deadline_ = start + std::chrono::duration_cast<std::chrono::steady_clock::duration>(
		                        std::chrono::duration<double>(config_.time_limit));
	timed_out_ = false;
	stats_ = {};
	auto entries = recurse(task_->root_state(), config_.max_depth, config_.max_nodes, {});
	SolveResult result;
	result.front = ParetoFront::from_entries(std::move(entries), task_->order());
	result.optimal = !timed_out_;
	stats_.cache_entries = cache_.size();
	stats_.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
	result.stats = stats_;
	return result;
}

std::optional<Solver::LowerBound> Solver::lower_bound(const State& state, int d, int n) {
	if (state.size() < std::size_t(config_.min_leaf_support)) return LowerBound{};
	clamp(d, n);
	const auto& order = task_->order();
	if (d > 0 && n > 0 && config_.use_cache) {
		if (const auto* e = cached(state.path(), d, n)) return LowerBound{ e->lower_bound };
	}
	std::optional<LowerBound> best;
	auto offer = [&](std::vector<SolutionValue> values) {
		if (!best) {
			best = LowerBound{ std::move(values) };
			return;
		}
		// scalar bounds: keep the tighter one
		if (order.total() && !values.empty() && !best->values.empty() &&
		    order.component_better(0, best->values[0][0], values[0][0]))
			best->values = std::move(values);
	};
	if (similarity_ && d > 0 && n > 0) {
		auto it = archive_.find({ d, n });
		if (it != archive_.end()) {
			for (const auto& entry : it->second) {
				auto lb = similarity_lb(entry, state, *task_);
				if (!lb) continue;
				++stats_.similarity_bounds;
				offer(std::move(lb->values));
				if (!order.total()) break;
			}
		}
	}
	if (!best || order.total()) {
		if (auto v = task_->optimistic_bound(state)) offer({ *v });
	}
	return best;
}

void Solver::store_optimal(const State& state, int d, int n, const std::vector<FrontEntry>& solutions) {
	if (!config_.use_cache) return;
	CacheEntry e;
	e.solutions = solutions;
	e.lower_bound = values_of(solutions);
	e.status = CacheStatus::kOptimal;
	cache_.insert_or_assign(CacheKey{ state.path(), d, n }, std::move(e));
	if (similarity_) {
		auto& list = archive_[{ d, n }];
		list.push_front({ std::vector<int>(state.rows().begin(), state.rows().end()), values_of(solutions) });
		if (list.size() > kArchivePerKey) list.pop_back();
	}
}

void Solver::store(const State& state, int d, int n, std::vector<FrontEntry> solutions, std::span<const SolutionValue> ub) {
	if (!config_.use_cache) return;
	if (ub.empty() || (task_->order().total() && !solutions.empty())) {
		store_optimal(state, d, n, solutions);
		return;
	}
	// Values pruned by ub are only known to be no better than ub.
	auto lb = values_of(solutions);
	lb.insert(lb.end(), ub.begin(), ub.end());
	CacheEntry e;
	e.lower_bound = nondom(std::move(lb), task_->order());
	e.status = CacheStatus::kLowerBoundOnly;
	cache_.insert_or_assign(CacheKey{ state.path(), d, n }, std::move(e));
}

std::vector<FrontEntry> Solver::solve_depth2_cached(const State& state, int d, int n, std::span<const SolutionValue> ub) {
	++stats_.depth2_calls;
	PairCounts counts(state, *task_);
	auto fronts = solve_depth2(counts, state, *task_, config_.min_leaf_support);
	store_optimal(state, 1, 1, fronts[1]);
	if (d == 2) {
		store_optimal(state, 2, 2, fronts[2]);
		store_optimal(state, 2, 3, fronts[3]);
	}
	return opt(std::move(fronts[std::size_t(n)]), state.context(), *task_, ub);
}

std::vector<FrontEntry> Solver::recurse(const State& state, int d, int n, std::span<const SolutionValue> ub) {
	++stats_.recursions;
	if (d == 0 || n == 0) return leaf_solve(state, *task_, ub, config_.min_leaf_support);
	clamp(d, n);
	const auto& order = task_->order();

	if (config_.use_cache) {
		if (const auto* e = cached(state.path(), d, n)) {
			if (e->status == CacheStatus::kOptimal) {
				++stats_.cache_hits;
				return opt(e->solutions, state.context(), *task_, ub);
			}
			if (bounds_ && lb_dominates_ub(e->lower_bound, ub, order)) {
				++stats_.lb_prunes;
				return {};
			}
		}
	}
	if (out_of_time()) return leaf_solve(state, *task_, ub, config_.min_leaf_support);
	if (depth2_ && d <= 2) return solve_depth2_cached(state, d, n, ub);

	const std::vector<SolutionValue> external(ub.begin(), ub.end());
	auto theta = leaf_solve(state, *task_, ub, config_.min_leaf_support);
	std::vector<SolutionValue> bound;
	auto refresh_bound = [&] {
		if (!bounds_) return;
		auto all = external;
		for (const auto& e : theta) all.push_back(e.value);
		bound = reduce_representative(nondom(std::move(all), order), kDefaultRepresentativeSize, BoundKind::kUpper, order);
	};
	refresh_bound();

	const int max_child = full_budget(d - 1);
	const int lo = std::max(0, n - 1 - max_child);
	const int hi = std::min(n - 1, max_child);
	const NodeContext node = state.context();

	for (int f = 0; f < task_->data().feature_count() && !timed_out_; ++f) {
		if (state.path().contains_feature(f)) continue;
		const State left = state.branch(f, false);
		const State right = state.branch(f, true);
		const SolutionValue g = task_->branch_cost(node, f);
		for (int nl = lo; nl <= hi; ++nl) {
			if (out_of_time()) break;
			const int nr = n - 1 - nl;
			std::optional<LowerBound> lb_right;
			if (bounds_) {
				auto lb_left = lower_bound(left, d - 1, nl);
				lb_right = lower_bound(right, d - 1, nr);
				if (lb_left && lb_right) {
					auto l = reduce_representative(lb_left->values, kDefaultRepresentativeSize, BoundKind::kLower, order);
					auto r = reduce_representative(lb_right->values, kDefaultRepresentativeSize, BoundKind::kLower, order);
					std::vector<SolutionValue> merged;
					for (const auto& a : l)
						for (const auto& b : r) merged.push_back(task_->combine(task_->combine(a, b), g));
					if (lb_dominates_ub(merged, bound, order)) {
						++stats_.lb_prunes;
						continue;
					}
				}
			}

			std::vector<SolutionValue> ub_left;
			if (subtraction_ && lb_right && !lb_right->values.empty() && !bound.empty())
				ub_left = subtract_ub(BoundSet{ bound, BoundKind::kUpper }, lb_right->values, g, *task_).values;
			auto theta_left = recurse(left, d - 1, nl, ub_left);
			if (theta_left.empty()) continue;

			std::vector<SolutionValue> ub_right;
			if (subtraction_ && !bound.empty()) {
				auto solved = values_of(theta_left);
				ub_right = subtract_ub(BoundSet{ bound, BoundKind::kUpper }, solved, g, *task_).values;
			}
			auto theta_right = recurse(right, d - 1, nr, ub_right);
			if (theta_right.empty()) continue;

			auto fresh = merge_opt(theta_left, theta_right, node, f, *task_, external);
			if (fresh.empty()) continue;
			theta.insert(theta.end(), std::make_move_iterator(fresh.begin()), std::make_move_iterator(fresh.end()));
			theta = nondom(std::move(theta), order);
			refresh_bound();
		}
	}
	if (!timed_out_) store(state, d, n, theta, external);
	return theta;
}

SolveResult solve(TaskPtr task, const SolverConfig& config) {
	Solver solver(std::move(task), config);
	return solver.solve();
}

TuneResult hypertune(const TuneObjective& objective, DatasetPtr data, int max_depth, std::uint64_t seed, SolverConfig base) {
	if (!objective.make_task) throw ContractError("hypertune: make_task is required");
	if (!data || data->size() < 10) throw ContractError("hypertune: at least 10 instances required");
	constexpr int kRepeats = 5;
	const int budgets = full_budget(max_depth) + 1;
	TuneResult result;
	result.mean_scores.assign(std::size_t(budgets), 0.0);

	auto select = objective.select ? objective.select : [](const ParetoFront& front, const OptimizationTask&) {
		return front.empty() ? std::optional<Tree>{} : std::optional<Tree>{ front[0].tree };
	};
	auto score = objective.score ? objective.score : [&](const Tree& tree, const DatasetPtr& validation) {
		auto task = objective.make_task(validation);
		auto v = tree_cost(tree, task->root_state(), *task);
		return task->order().key(0, v[0]);
	};

	Rng rng(seed);
	const std::size_t N = data->size();
	const std::size_t train_size = N * 4 / 5;
	for (int rep = 0; rep < kRepeats; ++rep) {
		auto rows = data->all_rows();
		rng.shuffle(std::span<int>(rows));
		std::vector<int> train(rows.begin(), rows.begin() + std::ptrdiff_t(train_size));
		std::vector<int> valid(rows.begin() + std::ptrdiff_t(train_size), rows.end());
		std::sort(train.begin(), train.end());
		std::sort(valid.begin(), valid.end());
		auto train_task = objective.make_task(std::make_shared<const Dataset>(data->subset(train)));
		auto valid_data = std::make_shared<const Dataset>(data->subset(valid));
		SolverConfig cfg = base;
		cfg.max_depth = max_depth;
		for (int n = 0; n < budgets; ++n) {
			cfg.max_nodes = n;
			auto res = solve(train_task, cfg);
			auto tree = select(res.front, *train_task);
			double s = tree ? score(*tree, valid_data) : std::numeric_limits<double>::infinity();
			result.mean_scores[std::size_t(n)] += s / kRepeats;
		}
	}
	result.best_budget = 0;
	for (int n = 1; n < budgets; ++n) {
		double best = result.mean_scores[std::size_t(result.best_budget)];
		double cur = result.mean_scores[std::size_t(n)];
		if (cur < best - 1e-9 * std::max(1.0, std::abs(best))) result.best_budget = n;
	}
	return result;
}

int hypertune_nodes(const TuneObjective& objective, DatasetPtr data, int max_depth, std::uint64_t seed, SolverConfig base) {
	return hypertune(objective, std::move(data), max_depth, seed, base).best_budget;
}

} // namespace septree
