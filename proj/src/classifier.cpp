#include "cooc/classifier.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <json.hpp>

#include "cooc/error.hpp"
#include "cooc/util.hpp"

namespace cooc {

std::vector<double> assemble_features(const std::string& action_a, const std::string& action_b,
                                      const PairFeatureSpec& spec) {
    std::vector<double> out;
    for (const auto& [name, table] : spec.tables) {
        auto ita = table->vectors.find(action_a);
        if (ita == table->vectors.end())
            fail(ErrorKind::Input, "action '" + action_a + "' missing from table '" + name + "'");
        auto itb = table->vectors.find(action_b);
        if (itb == table->vectors.end())
            fail(ErrorKind::Input, "action '" + action_b + "' missing from table '" + name + "'");
        const auto& ea = ita->second;
        const auto& eb = itb->second;
        for (size_t i = 0; i < ea.size(); ++i) out.push_back(ea[i] + eb[i]);
        for (size_t i = 0; i < ea.size(); ++i) out.push_back(std::abs(ea[i] - eb[i]));
    }
    if (!spec.measures.empty()) {
        if (spec.graph == nullptr)
            fail(ErrorKind::Config, "heuristic features requested without a graph");
        NodeId x = spec.graph->require_node(action_a);
        NodeId y = spec.graph->require_node(action_b);
        for (Measure m : spec.measures) out.push_back(heuristic_score(*spec.graph, x, y, m));
    }
    return out;
}

std::vector<std::string> feature_manifest(const PairFeatureSpec& spec) {
    std::vector<std::string> out;
    for (const auto& [name, table] : spec.tables) {
        for (size_t i = 0; i < table->dim; ++i)
            out.push_back(name + ":sum[" + std::to_string(i) + "]");
        for (size_t i = 0; i < table->dim; ++i)
            out.push_back(name + ":absdiff[" + std::to_string(i) + "]");
    }
    for (Measure m : spec.measures) out.push_back("heuristic:" + std::string(measure_name(m)));
    return out;
}

std::vector<double> Standardizer::apply_row(const std::vector<double>& row) const {
    if (row.size() != means.size())
        fail(ErrorKind::Input, "standardizer: feature count mismatch");
    std::vector<double> out(row.size());
    for (size_t i = 0; i < row.size(); ++i)
        out[i] = stds[i] == 0.0 ? 0.0 : (row[i] - means[i]) / stds[i];
    return out;
}

Standardizer fit_standardizer(const std::vector<std::vector<double>>& matrix) {
    if (matrix.size() < 2)
        fail(ErrorKind::Input, "standardizer needs at least 2 rows, got " +
                                   std::to_string(matrix.size()));
    const size_t cols = matrix.front().size();
    for (const auto& row : matrix)
        if (row.size() != cols) fail(ErrorKind::Input, "ragged feature matrix");

    Standardizer s;
    s.means.assign(cols, 0.0);
    s.stds.assign(cols, 0.0);
    const double n = static_cast<double>(matrix.size());
    for (const auto& row : matrix)
        for (size_t i = 0; i < cols; ++i) s.means[i] += row[i];
    for (double& m : s.means) m /= n;
    for (const auto& row : matrix)
        for (size_t i = 0; i < cols; ++i) {
            double d = row[i] - s.means[i];
            s.stds[i] += d * d;
        }
    for (double& v : s.stds) v = std::sqrt(v / n); // population std
    return s;
}

std::vector<std::vector<double>> apply_standardizer(const Standardizer& s,
                                                    const std::vector<std::vector<double>>& matrix) {
    std::vector<std::vector<double>> out;
    out.reserve(matrix.size());
    for (const auto& row : matrix) out.push_back(s.apply_row(row));
    return out;
}

void apply_standardizer(const Standardizer& s, PairDataset& dataset) {
    if (dataset.standardized)
        fail(ErrorKind::Input, "dataset is already standardized");
    dataset.rows = apply_standardizer(s, dataset.rows);
    dataset.standardized = true;
}

std::string_view kernel_name(Kernel k) {
    switch (k) {
        case Kernel::Linear: return "linear";
        case Kernel::Rbf: return "rbf";
        case Kernel::Polynomial: return "polynomial";
    }
    return "linear";
}

Kernel kernel_from_name(std::string_view name) {
    if (name == "linear") return Kernel::Linear;
    if (name == "rbf") return Kernel::Rbf;
    if (name == "polynomial" || name == "poly") return Kernel::Polynomial;
    fail(ErrorKind::Config, "unknown kernel: " + std::string(name));
}

double kernel_value(const SvmParams& p, const std::vector<double>& u, const std::vector<double>& v) {
    switch (p.kernel) {
        case Kernel::Linear: {
            double dot = 0.0;
            for (size_t i = 0; i < u.size(); ++i) dot += u[i] * v[i];
            return dot;
        }
        case Kernel::Rbf: {
            double d2 = 0.0;
            for (size_t i = 0; i < u.size(); ++i) {
                double d = u[i] - v[i];
                d2 += d * d;
            }
            return std::exp(-p.gamma * d2);
        }
        case Kernel::Polynomial: {
            double dot = 0.0;
            for (size_t i = 0; i < u.size(); ++i) dot += u[i] * v[i];
            double base = p.gamma * dot + p.coef0;
            double r = 1.0;
            for (int d = 0; d < p.degree; ++d) r *= base;
            return r;
        }
    }
    return 0.0;
}

double SvmModel::decision_value(const std::vector<double>& x) const {
    double f = bias;
    for (size_t i = 0; i < support_vectors.size(); ++i)
        f += dual_coefs[i] * kernel_value(params, support_vectors[i], x);
    return f;
}

int SvmModel::predict(const std::vector<double>& x) const {
    return decision_value(x) > 0.0 ? 1 : 0;
}

double SvmModel::accuracy_on(const std::vector<std::vector<double>>& rows,
                             const std::vector<int>& labels) const {
    if (rows.size() != labels.size() || rows.empty())
        fail(ErrorKind::Input, "accuracy_on: bad row/label lengths");
    size_t hits = 0;
    for (size_t i = 0; i < rows.size(); ++i)
        if (predict(rows[i]) == labels[i]) ++hits;
    return static_cast<double>(hits) / static_cast<double>(rows.size());
}

SvmModel svm_train(const std::vector<std::vector<double>>& features,
                   const std::vector<int>& labels, const SvmParams& params) {
    const size_t n = features.size();
    if (n == 0 || labels.size() != n)
        fail(ErrorKind::Input, "svm_train: empty data or label length mismatch");
    if (!(params.c > 0.0)) fail(ErrorKind::Input, "svm_train: C must be positive");
    if (!(params.gamma > 0.0)) fail(ErrorKind::Input, "svm_train: gamma must be positive");

    std::vector<double> y(n);
    bool has_pos = false, has_neg = false;
    for (size_t i = 0; i < n; ++i) {
        y[i] = labels[i] == 1 ? 1.0 : -1.0;
        (labels[i] == 1 ? has_pos : has_neg) = true;
    }
    if (!has_pos || !has_neg)
        fail(ErrorKind::Input, "svm_train: both classes must be present");

    // full kernel matrix; training sets here are small
    std::vector<double> K(n * n);
    for (size_t i = 0; i < n; ++i)
        for (size_t j = i; j < n; ++j) {
            double v = kernel_value(params, features[i], features[j]);
            K[i * n + j] = v;
            K[j * n + i] = v;
        }

    const double C = params.c;
    std::vector<double> alpha(n, 0.0);
    std::vector<double> grad(n, -1.0); // gradient of the dual at alpha = 0

    const uint64_t budget = params.max_epochs * static_cast<uint64_t>(n);
    uint64_t iter = 0;
    double gap = std::numeric_limits<double>::infinity();

    auto in_up = [&](size_t k) { return y[k] > 0 ? alpha[k] < C : alpha[k] > 0.0; };
    auto in_low = [&](size_t k) { return y[k] > 0 ? alpha[k] > 0.0 : alpha[k] < C; };

    while (iter < budget) {
        // maximal violating pair
        double m_up = -std::numeric_limits<double>::infinity();
        double m_low = std::numeric_limits<double>::infinity();
        size_t i = n, j = n;
        for (size_t k = 0; k < n; ++k) {
            double v = -y[k] * grad[k];
            if (in_up(k) && v > m_up) {
                m_up = v;
                i = k;
            }
            if (in_low(k) && v < m_low) {
                m_low = v;
                j = k;
            }
        }
        gap = m_up - m_low;
        if (!(gap >= params.tol) || i == n || j == n) break;
        ++iter;

        double quad = K[i * n + i] + K[j * n + j] - 2.0 * K[i * n + j];
        if (quad <= 0.0) quad = 1e-12;
        double t = gap / quad;

        // clip so both multipliers stay inside [0, C]
        double t_max = std::numeric_limits<double>::infinity();
        t_max = std::min(t_max, y[i] > 0 ? C - alpha[i] : alpha[i]);
        t_max = std::min(t_max, y[j] > 0 ? alpha[j] : C - alpha[j]);
        t = std::min(t, t_max);

        alpha[i] += y[i] * t;
        alpha[j] -= y[j] * t;
        // numeric hygiene at the box boundary
        alpha[i] = std::clamp(alpha[i], 0.0, C);
        alpha[j] = std::clamp(alpha[j], 0.0, C);

        for (size_t k = 0; k < n; ++k)
            grad[k] += t * y[k] * (K[i * n + k] - K[j * n + k]);
    }

    SvmModel model;
    model.params = params;
    model.iterations = iter;
    model.kkt_gap = gap;
    model.converged = gap < params.tol;

    double sum_ay = 0.0;
    for (size_t k = 0; k < n; ++k) sum_ay += alpha[k] * y[k];
    model.alpha_y_residual = std::abs(sum_ay);

    // bias from free support vectors; fall back to the violating-pair bracket
    double b_sum = 0.0;
    size_t b_count = 0;
    double m_up = -std::numeric_limits<double>::infinity();
    double m_low = std::numeric_limits<double>::infinity();
    for (size_t k = 0; k < n; ++k) {
        double v = -y[k] * grad[k];
        if (alpha[k] > 0.0 && alpha[k] < C) {
            b_sum += v;
            ++b_count;
        }
        if (in_up(k)) m_up = std::max(m_up, v);
        if (in_low(k)) m_low = std::min(m_low, v);
    }
    model.bias = b_count > 0 ? b_sum / static_cast<double>(b_count) : 0.5 * (m_up + m_low);

    for (size_t k = 0; k < n; ++k) {
        if (alpha[k] > 1e-12) {
            model.support_vectors.push_back(features[k]);
            model.dual_coefs.push_back(alpha[k] * y[k]);
        }
    }
    return model;
}

std::vector<SvmParams> default_grid() {
    std::vector<SvmParams> grid;
    for (Kernel k : {Kernel::Linear, Kernel::Rbf, Kernel::Polynomial})
        for (double c : {0.1, 1.0, 10.0, 100.0})
            for (double gamma : {0.001, 0.01, 0.1, 1.0}) {
                SvmParams p;
                p.kernel = k;
                p.c = c;
                p.gamma = gamma;
                grid.push_back(p);
            }
    return grid;
}

GridSearchResult grid_search(const std::vector<std::vector<double>>& train_x,
                             const std::vector<int>& train_y,
                             const std::vector<std::vector<double>>& val_x,
                             const std::vector<int>& val_y,
                             const std::vector<SvmParams>& grid) {
    if (grid.empty()) fail(ErrorKind::Input, "grid search: empty grid");
    GridSearchResult best;
    double best_acc = -1.0;
    for (const auto& params : grid) {
        SvmModel model = svm_train(train_x, train_y, params);
        double acc = model.accuracy_on(val_x, val_y);
        if (acc > best_acc) { // strict: ties keep the earlier config
            best_acc = acc;
            best.best_model = std::move(model);
            best.best_params = params;
        }
    }
    best.val_accuracy = best_acc;
    return best;
}

int SvmPipelineModel::predict_raw(const std::vector<double>& unscaled_row) const {
    return model.predict(standardizer.apply_row(unscaled_row));
}

std::string to_model_json(const SvmPipelineModel& m, const std::string& config_hash) {
    nlohmann::json j;
    if (!config_hash.empty()) j["config_hash"] = config_hash;
    j["kernel"] = std::string(kernel_name(m.model.params.kernel));
    j["c"] = m.model.params.c;
    j["gamma"] = m.model.params.gamma;
    j["degree"] = m.model.params.degree;
    j["coef0"] = m.model.params.coef0;
    j["bias"] = m.model.bias;
    j["support_vectors"] = m.model.support_vectors;
    j["dual_coefs"] = m.model.dual_coefs;
    j["standardizer"] = {{"means", m.standardizer.means}, {"stds", m.standardizer.stds}};
    j["feature_manifest"] = m.feature_names;
    return j.dump(2) + "\n";
}

SvmPipelineModel model_from_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text, nullptr, false);
    if (j.is_discarded()) fail(ErrorKind::Parse, "invalid model JSON");
    SvmPipelineModel m;
    m.model.params.kernel = kernel_from_name(j.at("kernel").get<std::string>());
    m.model.params.c = j.at("c").get<double>();
    m.model.params.gamma = j.at("gamma").get<double>();
    m.model.params.degree = j.at("degree").get<int>();
    m.model.params.coef0 = j.at("coef0").get<double>();
    m.model.bias = j.at("bias").get<double>();
    m.model.support_vectors = j.at("support_vectors").get<std::vector<std::vector<double>>>();
    m.model.dual_coefs = j.at("dual_coefs").get<std::vector<double>>();
    m.standardizer.means = j.at("standardizer").at("means").get<std::vector<double>>();
    m.standardizer.stds = j.at("standardizer").at("stds").get<std::vector<double>>();
    m.feature_names = j.at("feature_manifest").get<std::vector<std::string>>();
    if (m.model.support_vectors.size() != m.model.dual_coefs.size())
        fail(ErrorKind::Validation, "model JSON: support vector / dual coef count mismatch");
    return m;
}

void save_model(const SvmPipelineModel& m, const std::filesystem::path& path,
                const std::string& config_hash) {
    write_file(path, to_model_json(m, config_hash));
}

SvmPipelineModel load_model(const std::filesystem::path& path) {
    return model_from_json(read_file(path));
}

} // namespace cooc
