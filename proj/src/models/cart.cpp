#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <set>
#include <vector>

#include "scrub/error.hpp"
#include "scrub/rng.hpp"
#include "detail.hpp"

namespace scrub::detail {
namespace {

struct TreeNode {
    std::size_t feature = 0;
    double threshold = 0.0;
    int left = -1; // -1 marks a leaf
    int right = -1;
    std::vector<double> probs; // leaf class proportions
};

struct Tree {
    std::vector<TreeNode> nodes; // node 0 is the root
};

// Per-feature (value, row) pairs for the nonzero entries, sorted by value.
// Stored values are strictly positive, so absent rows are the zero group.
struct ColumnIndex {
    std::vector<std::vector<std::pair<double, std::size_t>>> cols;
};

ColumnIndex build_columns(const std::vector<FeatureVector>& X, std::size_t num_features) {
    ColumnIndex index;
    index.cols.resize(num_features);
    for (std::size_t i = 0; i < X.size(); ++i) {
        for (const auto& [f, value] : X[i].entries) {
            if (value < 0.0) throw internal_error("negative feature value in tree fit");
            index.cols[f].push_back({value, i});
        }
    }
    for (auto& col : index.cols) std::sort(col.begin(), col.end());
    return index;
}

double gini(const std::vector<double>& hist, double total) {
    double acc = 0.0;
    for (double h : hist) acc += (h / total) * (h / total);
    return 1.0 - acc;
}

const std::vector<double>& tree_leaf_probs(const Tree& tree, const FeatureVector& x) {
    int node = 0;
    while (tree.nodes[static_cast<std::size_t>(node)].left >= 0) {
        const TreeNode& tn = tree.nodes[static_cast<std::size_t>(node)];
        double value = 0.0;
        for (const auto& [index, v] : x.entries) {
            if (index == tn.feature) {
                value = v;
                break;
            }
        }
        node = value <= tn.threshold ? tn.left : tn.right;
    }
    return tree.nodes[static_cast<std::size_t>(node)].probs;
}

// Grows one CART tree with Gini impurity. Candidate thresholds are midpoints
// between consecutive distinct values (zeros included); a node splits only
// when some candidate strictly lowers the weighted child impurity. Ties go to
// the lowest feature index, then the lowest threshold.
class TreeGrower {
public:
    TreeGrower(const ColumnIndex& columns, const std::vector<int>& y, std::size_t num_classes,
               std::size_t num_rows, std::size_t max_depth, std::size_t min_split)
        : columns_(columns),
          y_(y),
          num_classes_(num_classes),
          max_depth_(max_depth),
          min_split_(min_split),
          node_stamp_(num_rows, 0),
          value_stamp_(num_rows, 0),
          value_of_(num_rows, 0.0) {}

    Tree grow(std::vector<std::size_t> root_rows, const std::vector<double>& row_weight,
              const std::function<const std::vector<std::size_t>&()>& sample_features) {
        Tree tree;
        std::vector<double> root_hist(num_classes_, 0.0);
        for (std::size_t row : root_rows) {
            root_hist[static_cast<std::size_t>(y_[row])] += row_weight[row];
        }
        tree.nodes.emplace_back();
        std::vector<WorkItem> stack;
        stack.push_back({0, std::move(root_rows), std::move(root_hist), 0});
        while (!stack.empty()) {
            WorkItem item = std::move(stack.back());
            stack.pop_back();
            const double total = std::accumulate(item.hist.begin(), item.hist.end(), 0.0);
            const double node_gini = gini(item.hist, total);
            const bool pure = std::any_of(item.hist.begin(), item.hist.end(),
                                          [&](double h) { return h == total; });
            bool split_found = false;
            std::size_t best_feature = 0;
            double best_threshold = 0.0;
            double best_gini = node_gini - 1e-12;
            std::vector<double> best_left_hist;
            if (!pure && item.depth < max_depth_ && total >= static_cast<double>(min_split_)) {
                split_found = find_best_split(item, row_weight, total, sample_features(),
                                              best_feature, best_threshold, best_gini,
                                              best_left_hist);
            }
            if (!split_found) {
                TreeNode& leaf = tree.nodes[static_cast<std::size_t>(item.node)];
                leaf.probs.resize(num_classes_);
                for (std::size_t c = 0; c < num_classes_; ++c) leaf.probs[c] = item.hist[c] / total;
                continue;
            }
            WorkItem left{static_cast<int>(tree.nodes.size()), {}, std::move(best_left_hist),
                          item.depth + 1};
            WorkItem right{left.node + 1, {}, std::vector<double>(num_classes_), item.depth + 1};
            for (std::size_t c = 0; c < num_classes_; ++c) {
                right.hist[c] = item.hist[c] - left.hist[c];
            }
            partition_rows(item.rows, best_feature, best_threshold, left.rows, right.rows);
            TreeNode& node = tree.nodes[static_cast<std::size_t>(item.node)];
            node.feature = best_feature;
            node.threshold = best_threshold;
            node.left = left.node;
            node.right = right.node;
            tree.nodes.emplace_back();
            tree.nodes.emplace_back();
            stack.push_back(std::move(right));
            stack.push_back(std::move(left)); // left child is grown first
        }
        return tree;
    }

private:
    struct WorkItem {
        int node;
        std::vector<std::size_t> rows;
        std::vector<double> hist;
        std::size_t depth;
    };

    bool find_best_split(const WorkItem& item, const std::vector<double>& row_weight, double total,
                         const std::vector<std::size_t>& candidates, std::size_t& best_feature,
                         double& best_threshold, double& best_gini,
                         std::vector<double>& best_left_hist) {
        ++node_mark_;
        for (std::size_t row : item.rows) node_stamp_[row] = node_mark_;
        bool found = false;
        std::vector<double> left_hist(num_classes_);
        std::vector<double> right_hist(num_classes_);
        for (std::size_t f : candidates) {
            gathered_.clear();
            std::vector<double> nonzero_hist(num_classes_, 0.0);
            double nonzero_weight = 0.0;
            for (const auto& [value, row] : columns_.cols[f]) {
                if (node_stamp_[row] != node_mark_) continue;
                gathered_.push_back({value, row});
                nonzero_hist[static_cast<std::size_t>(y_[row])] += row_weight[row];
                nonzero_weight += row_weight[row];
            }
            if (gathered_.empty()) continue;
            double left_weight = total - nonzero_weight;
            for (std::size_t c = 0; c < num_classes_; ++c) {
                left_hist[c] = item.hist[c] - nonzero_hist[c];
            }
            double prev_value = 0.0;
            bool have_left = left_weight > 0.0;
            std::size_t g = 0;
            while (g < gathered_.size()) {
                const double value = gathered_[g].first;
                if (have_left) {
                    const double mid = 0.5 * (prev_value + value);
                    if (mid > prev_value && mid < value) {
                        const double right_weight = total - left_weight;
                        for (std::size_t c = 0; c < num_classes_; ++c) {
                            right_hist[c] = item.hist[c] - left_hist[c];
                        }
                        const double weighted =
                            (left_weight * gini(left_hist, left_weight) +
                             right_weight * gini(right_hist, right_weight)) /
                            total;
                        if (weighted < best_gini) {
                            best_gini = weighted;
                            best_feature = f;
                            best_threshold = mid;
                            best_left_hist = left_hist;
                            found = true;
                        }
                    }
                }
                while (g < gathered_.size() && gathered_[g].first == value) {
                    const std::size_t row = gathered_[g].second;
                    left_hist[static_cast<std::size_t>(y_[row])] += row_weight[row];
                    left_weight += row_weight[row];
                    ++g;
                }
                prev_value = value;
                have_left = true;
            }
        }
        return found;
    }

    void partition_rows(const std::vector<std::size_t>& rows, std::size_t feature,
                        double threshold, std::vector<std::size_t>& left_rows,
                        std::vector<std::size_t>& right_rows) {
        ++value_mark_;
        for (const auto& [value, row] : columns_.cols[feature]) {
            if (node_stamp_[row] == node_mark_) {
                value_stamp_[row] = value_mark_;
                value_of_[row] = value;
            }
        }
        for (std::size_t row : rows) {
            const double value = value_stamp_[row] == value_mark_ ? value_of_[row] : 0.0;
            (value <= threshold ? left_rows : right_rows).push_back(row);
        }
    }

    const ColumnIndex& columns_;
    const std::vector<int>& y_;
    std::size_t num_classes_;
    std::size_t max_depth_;
    std::size_t min_split_;
    std::vector<std::uint64_t> node_stamp_;
    std::vector<std::uint64_t> value_stamp_;
    std::vector<double> value_of_;
    std::uint64_t node_mark_ = 0;
    std::uint64_t value_mark_ = 0;
    std::vector<std::pair<double, std::size_t>> gathered_;
};

std::size_t split_candidate_count(double fraction, std::size_t num_features) {
    if (fraction == 0.0) {
        const auto root = static_cast<std::size_t>(
            std::ceil(std::sqrt(static_cast<double>(num_features))));
        return std::clamp<std::size_t>(root, 1, num_features);
    }
    const auto count = static_cast<std::size_t>(
        std::ceil(fraction * static_cast<double>(num_features)));
    return std::clamp<std::size_t>(count, 1, num_features);
}

class DtModel final : public Model {
public:
    DtModel(std::size_t num_classes, std::size_t num_features, Tree tree)
        : Model(ModelKind::DT, num_classes, num_features), tree_(std::move(tree)) {}

protected:
    ScoreMatrix scores_impl(const std::vector<FeatureVector>& X) const override {
        ScoreMatrix scores(X.size(), num_classes());
        for (std::size_t r = 0; r < X.size(); ++r) {
            const std::vector<double>& probs = tree_leaf_probs(tree_, X[r]);
            for (std::size_t c = 0; c < num_classes(); ++c) scores.at(r, c) = probs[c];
        }
        return scores;
    }

private:
    Tree tree_;
};

class RfModel final : public Model {
public:
    RfModel(std::size_t num_classes, std::size_t num_features, std::vector<Tree> trees)
        : Model(ModelKind::RF, num_classes, num_features), trees_(std::move(trees)) {}

protected:
    ScoreMatrix scores_impl(const std::vector<FeatureVector>& X) const override {
        const std::size_t C = num_classes();
        ScoreMatrix scores(X.size(), C);
        for (std::size_t r = 0; r < X.size(); ++r) {
            for (const Tree& tree : trees_) {
                const std::vector<double>& probs = tree_leaf_probs(tree, X[r]);
                for (std::size_t c = 0; c < C; ++c) scores.at(r, c) += probs[c];
            }
            for (std::size_t c = 0; c < C; ++c) {
                scores.at(r, c) /= static_cast<double>(trees_.size());
            }
        }
        return scores;
    }

private:
    std::vector<Tree> trees_;
};

void validate_tree_config(const Hyperparameters& hp) {
    if (hp.dt_min_split < 2) throw config_error("dt_min_split must be at least 2");
}

} // namespace

ModelPtr fit_dt(const std::vector<FeatureVector>& X, const std::vector<int>& y,
                std::size_t num_classes, std::size_t num_features, const Hyperparameters& hp) {
    validate_tree_config(hp);
    const ColumnIndex columns = build_columns(X, num_features);
    TreeGrower grower(columns, y, num_classes, X.size(), hp.dt_max_depth, hp.dt_min_split);
    std::vector<std::size_t> all_rows(X.size());
    std::iota(all_rows.begin(), all_rows.end(), std::size_t{0});
    std::vector<std::size_t> all_features(num_features);
    std::iota(all_features.begin(), all_features.end(), std::size_t{0});
    const std::vector<double> unit_weight(X.size(), 1.0);
    Tree tree = grower.grow(std::move(all_rows), unit_weight,
                            [&]() -> const std::vector<std::size_t>& { return all_features; });
    return std::make_unique<DtModel>(num_classes, num_features, std::move(tree));
}

ModelPtr fit_rf(const std::vector<FeatureVector>& X, const std::vector<int>& y,
                std::size_t num_classes, std::size_t num_features, const Hyperparameters& hp) {
    validate_tree_config(hp);
    if (hp.rf_trees < 1) throw config_error("rf_trees must be at least 1");
    if (hp.rf_feature_fraction < 0.0 || hp.rf_feature_fraction > 1.0) {
        throw config_error("rf_feature_fraction must lie in [0, 1]");
    }
    const ColumnIndex columns = build_columns(X, num_features);
    const std::size_t n = X.size();
    const std::size_t count = split_candidate_count(hp.rf_feature_fraction, num_features);
    std::vector<std::size_t> all_features(num_features);
    std::iota(all_features.begin(), all_features.end(), std::size_t{0});
    std::vector<Tree> trees;
    trees.reserve(hp.rf_trees);
    for (std::size_t tree_index = 0; tree_index < hp.rf_trees; ++tree_index) {
        Rng rng(Rng::mix(hp.seed, tree_index));
        std::vector<double> weight(n, 1.0);
        std::vector<std::size_t> root_rows;
        if (hp.rf_bootstrap) {
            weight.assign(n, 0.0);
            for (std::size_t draw = 0; draw < n; ++draw) weight[rng.uniform_index(n)] += 1.0;
            for (std::size_t row = 0; row < n; ++row) {
                if (weight[row] > 0.0) root_rows.push_back(row);
            }
        } else {
            root_rows.resize(n);
            std::iota(root_rows.begin(), root_rows.end(), std::size_t{0});
        }
        std::vector<std::size_t> sampled;
        auto sample_features = [&]() -> const std::vector<std::size_t>& {
            if (count == num_features) return all_features;
            std::set<std::size_t> chosen;
            while (chosen.size() < count) chosen.insert(rng.uniform_index(num_features));
            sampled.assign(chosen.begin(), chosen.end());
            return sampled;
        };
        TreeGrower grower(columns, y, num_classes, n, hp.dt_max_depth, hp.dt_min_split);
        trees.push_back(grower.grow(std::move(root_rows), weight, sample_features));
    }
    return std::make_unique<RfModel>(num_classes, num_features, std::move(trees));
}

} // namespace scrub::detail
