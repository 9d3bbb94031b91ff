#include "patentcite/model.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "patentcite/error.hpp"

namespace patentcite {

std::string model_kind_name(ModelKind kind) {
    switch (kind) {
        case ModelKind::Logistic: return "lr";
        case ModelKind::Tree: return "dt";
        case ModelKind::NaiveBayes: return "nb";
        case ModelKind::Forest: return "rf";
    }
    return "unknown";
}

double predict_proba(const TrainedModel& model, const std::vector<double>& features) {
    if (features.size() != model.feature_names.size())
        throw DataError("feature vector length " + std::to_string(features.size()) +
                        " does not match model arity " +
                        std::to_string(model.feature_names.size()));
    switch (model.kind()) {
        case ModelKind::Logistic:
            return logistic_proba(std::get<LogisticModel>(model.model), features);
        case ModelKind::Tree:
            return tree_proba(std::get<TreeModel>(model.model), features);
        case ModelKind::NaiveBayes:
            return nb_posterior(std::get<NBModel>(model.model), features);
        case ModelKind::Forest:
            return forest_proba(std::get<ForestModel>(model.model), features);
    }
    throw ModelError("unreachable model kind");
}

int predict(const TrainedModel& model, const std::vector<double>& features, double threshold) {
    return predict_proba(model, features) >= threshold ? 1 : 0;
}

namespace {

// 17 significant digits: enough for an exact double round trip.
std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.16e", v);
    return buf;
}

std::string quote(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            default: out += c;
        }
    }
    return out + "\"";
}

std::string transform_name(Transform t) {
    return t == Transform::Log1p ? "log1p" : "none";
}

void emit_double_array(std::ostringstream& out, const std::vector<double>& values) {
    out << "[";
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) out << ", ";
        out << num(values[i]);
    }
    out << "]";
}

void emit_tree_nodes(std::ostringstream& out, const TreeModel& tree, const std::string& indent) {
    out << "[\n";
    for (std::size_t i = 0; i < tree.nodes.size(); ++i) {
        const TreeNode& node = tree.nodes[i];
        out << indent << "  ";
        if (node.feature >= 0) {
            out << "{\"feature\": " << node.feature << ", \"threshold\": " << num(node.threshold)
                << ", \"left\": " << node.left << ", \"right\": " << node.right << "}";
        } else {
            out << "{\"class\": " << node.leaf_class << ", \"n0\": " << node.n0
                << ", \"n1\": " << node.n1 << "}";
        }
        out << (i + 1 < tree.nodes.size() ? ",\n" : "\n");
    }
    out << indent << "]";
}

void emit_tree_config(std::ostringstream& out, const TreeConfig& config) {
    out << "\"max_depth\": " << config.max_depth
        << ", \"min_samples_split\": " << config.min_samples_split
        << ", \"min_impurity_decrease\": " << num(config.min_impurity_decrease);
}

void emit_parameters(std::ostringstream& out, const LogisticModel& m) {
    out << "    \"weights\": ";
    emit_double_array(out, m.weights);
    out << ",\n    \"bias\": " << num(m.bias)
        << ",\n    \"transform\": " << quote(transform_name(m.transform))
        << ",\n    \"learning_rate\": " << num(m.config.learning_rate)
        << ",\n    \"l2\": " << num(m.config.l2)
        << ",\n    \"max_iters\": " << m.config.max_iters
        << ",\n    \"tolerance\": " << num(m.config.tolerance) << "\n";
}

void emit_parameters(std::ostringstream& out, const TreeModel& m) {
    out << "    \"nodes\": ";
    emit_tree_nodes(out, m, "    ");
    out << ",\n    ";
    emit_tree_config(out, m.config);
    out << "\n";
}

void emit_parameters(std::ostringstream& out, const NBModel& m) {
    out << "    \"class_priors\": [" << num(m.class_priors[0]) << ", " << num(m.class_priors[1])
        << "],\n    \"means\": [";
    emit_double_array(out, m.means[0]);
    out << ", ";
    emit_double_array(out, m.means[1]);
    out << "],\n    \"variances\": [";
    emit_double_array(out, m.variances[0]);
    out << ", ";
    emit_double_array(out, m.variances[1]);
    out << "],\n    \"variance_floor\": " << num(m.variance_floor) << "\n";
}

void emit_parameters(std::ostringstream& out, const ForestModel& m) {
    out << "    \"features_per_split\": " << m.features_per_split
        << ",\n    \"bootstrap\": " << (m.bootstrap ? "true" : "false")
        << ",\n    \"master_seed\": " << m.master_seed << ",\n    ";
    emit_tree_config(out, m.tree_config);
    out << ",\n    \"trees\": [\n";
    for (std::size_t t = 0; t < m.trees.size(); ++t) {
        out << "      ";
        emit_tree_nodes(out, m.trees[t], "      ");
        out << (t + 1 < m.trees.size() ? ",\n" : "\n");
    }
    out << "    ]\n";
}

using nlohmann::json;

[[noreturn]] void corrupt(const std::string& why) {
    throw ModelError("corrupt model file: " + why);
}

double get_double(const json& j, const char* key) {
    if (!j.contains(key) || !j[key].is_number())
        corrupt(std::string("missing or non-numeric field '") + key + "'");
    return j[key].get<double>();
}

long long get_int(const json& j, const char* key) {
    if (!j.contains(key) || !j[key].is_number_integer())
        corrupt(std::string("missing or non-integer field '") + key + "'");
    return j[key].get<long long>();
}

std::uint64_t get_u64(const json& j, const char* key) {
    if (!j.contains(key) || !j[key].is_number_integer())
        corrupt(std::string("missing or non-integer field '") + key + "'");
    return j[key].get<std::uint64_t>();
}

std::vector<double> get_double_array(const json& j, const char* key) {
    if (!j.contains(key) || !j[key].is_array())
        corrupt(std::string("missing or non-array field '") + key + "'");
    std::vector<double> out;
    for (const auto& v : j[key]) {
        if (!v.is_number())
            corrupt(std::string("non-numeric entry in '") + key + "'");
        out.push_back(v.get<double>());
    }
    return out;
}

Transform parse_transform(const json& j) {
    if (!j.contains("transform") || !j["transform"].is_string())
        corrupt("missing transform");
    const std::string name = j["transform"].get<std::string>();
    if (name == "log1p") return Transform::Log1p;
    if (name == "none") return Transform::None;
    corrupt("unknown transform '" + name + "'");
}

TreeConfig parse_tree_config(const json& j) {
    TreeConfig config;
    config.max_depth = static_cast<int>(get_int(j, "max_depth"));
    config.min_samples_split = static_cast<int>(get_int(j, "min_samples_split"));
    config.min_impurity_decrease = get_double(j, "min_impurity_decrease");
    return config;
}

TreeModel parse_tree_nodes(const json& nodes, const TreeConfig& config) {
    if (!nodes.is_array() || nodes.empty())
        corrupt("tree nodes must be a non-empty array");
    TreeModel tree;
    tree.config = config;
    const auto node_count = static_cast<long long>(nodes.size());
    for (const auto& jn : nodes) {
        TreeNode node;
        if (jn.contains("feature")) {
            node.feature = static_cast<int>(get_int(jn, "feature"));
            node.threshold = get_double(jn, "threshold");
            node.left = static_cast<int>(get_int(jn, "left"));
            node.right = static_cast<int>(get_int(jn, "right"));
            if (node.feature < 0 || node.left < 0 || node.left >= node_count ||
                node.right < 0 || node.right >= node_count)
                corrupt("internal node with out-of-range children");
        } else {
            node.feature = -1;
            node.leaf_class = static_cast<int>(get_int(jn, "class"));
            node.n0 = get_int(jn, "n0");
            node.n1 = get_int(jn, "n1");
            if ((node.leaf_class != 0 && node.leaf_class != 1) || node.n0 + node.n1 <= 0)
                corrupt("leaf with invalid class or counts");
        }
        tree.nodes.push_back(node);
    }
    return tree;
}

} // namespace

std::string to_json_string(const TrainedModel& model) {
    std::ostringstream out;
    out << "{\n";
    out << "  \"format_version\": 1,\n";
    out << "  \"model_type\": " << quote(model_kind_name(model.kind())) << ",\n";
    out << "  \"feature_names\": [";
    for (std::size_t i = 0; i < model.feature_names.size(); ++i) {
        if (i) out << ", ";
        out << quote(model.feature_names[i]);
    }
    out << "],\n";
    out << "  \"parameters\": {\n";
    std::visit([&out](const auto& m) { emit_parameters(out, m); }, model.model);
    out << "  }\n";
    out << "}\n";
    return out.str();
}

TrainedModel from_json_string(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        corrupt(e.what());
    }
    if (!j.is_object())
        corrupt("top level is not an object");
    if (!j.contains("format_version") || !j["format_version"].is_number_integer())
        corrupt("missing format_version");
    const long long version = j["format_version"].get<long long>();
    if (version != 1)
        throw ModelError("unsupported model format_version " + std::to_string(version));
    if (!j.contains("model_type") || !j["model_type"].is_string())
        corrupt("missing model_type");
    const std::string tag = j["model_type"].get<std::string>();

    TrainedModel model;
    if (!j.contains("feature_names") || !j["feature_names"].is_array())
        corrupt("missing feature_names");
    for (const auto& name : j["feature_names"]) {
        if (!name.is_string())
            corrupt("feature_names must contain strings");
        model.feature_names.push_back(name.get<std::string>());
    }
    if (!j.contains("parameters") || !j["parameters"].is_object())
        corrupt("missing parameters");
    const json& p = j["parameters"];
    const std::size_t d = model.feature_names.size();

    if (tag == "lr") {
        LogisticModel m;
        m.weights = get_double_array(p, "weights");
        if (m.weights.size() != d)
            corrupt("weight count does not match feature_names");
        m.bias = get_double(p, "bias");
        m.transform = parse_transform(p);
        m.config.learning_rate = get_double(p, "learning_rate");
        m.config.l2 = get_double(p, "l2");
        m.config.max_iters = static_cast<int>(get_int(p, "max_iters"));
        m.config.tolerance = get_double(p, "tolerance");
        m.config.transform = m.transform;
        model.model = std::move(m);
    } else if (tag == "dt") {
        if (!p.contains("nodes"))
            corrupt("missing tree nodes");
        model.model = parse_tree_nodes(p["nodes"], parse_tree_config(p));
    } else if (tag == "nb") {
        NBModel m;
        auto priors = get_double_array(p, "class_priors");
        if (priors.size() != 2)
            corrupt("class_priors must hold two values");
        m.class_priors = {priors[0], priors[1]};
        if (std::abs(m.class_priors[0] + m.class_priors[1] - 1.0) > 1e-12)
            corrupt("class priors do not sum to 1");
        if (!p.contains("means") || !p["means"].is_array() || p["means"].size() != 2 ||
            !p.contains("variances") || !p["variances"].is_array() || p["variances"].size() != 2)
            corrupt("means/variances must be two per-class arrays");
        for (int c = 0; c < 2; ++c) {
            for (const auto& v : p["means"][c]) {
                if (!v.is_number())
                    corrupt("non-numeric entry in 'means'");
                m.means[c].push_back(v.get<double>());
            }
            for (const auto& v : p["variances"][c]) {
                if (!v.is_number())
                    corrupt("non-numeric entry in 'variances'");
                m.variances[c].push_back(v.get<double>());
            }
            if (m.means[c].size() != d || m.variances[c].size() != d)
                corrupt("per-class statistics do not match feature_names");
        }
        m.variance_floor = get_double(p, "variance_floor");
        model.model = std::move(m);
    } else if (tag == "rf") {
        ForestModel m;
        m.features_per_split = static_cast<std::size_t>(get_int(p, "features_per_split"));
        if (!p.contains("bootstrap") || !p["bootstrap"].is_boolean())
            corrupt("missing bootstrap flag");
        m.bootstrap = p["bootstrap"].get<bool>();
        m.master_seed = get_u64(p, "master_seed");
        m.tree_config = parse_tree_config(p);
        if (!p.contains("trees") || !p["trees"].is_array() || p["trees"].empty())
            corrupt("missing trees");
        for (const auto& tree : p["trees"])
            m.trees.push_back(parse_tree_nodes(tree, m.tree_config));
        model.model = std::move(m);
    } else {
        throw ModelError("unknown model tag '" + tag + "'");
    }
    return model;
}

void serialize_model(const TrainedModel& model, const std::string& path) {
    std::ofstream out(path);
    if (!out)
        throw ModelError("cannot open output file: " + path);
    out << to_json_string(model);
    if (!out)
        throw ModelError("failed writing " + path);
}

TrainedModel deserialize_model(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw ModelError("cannot open model file: " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return from_json_string(buffer.str());
}

} // namespace patentcite
