#ifndef PATENTCITE_MODEL_HPP
#define PATENTCITE_MODEL_HPP

#include <string>
#include <variant>
#include <vector>

#include "patentcite/forest.hpp"
#include "patentcite/logistic.hpp"
#include "patentcite/naive_bayes.hpp"
#include "patentcite/tree.hpp"

namespace patentcite {

enum class ModelKind { Logistic, Tree, NaiveBayes, Forest };

// One fitted classifier of any family, tagged with the feature schema it was
// trained on so prediction can reject mismatched inputs.
struct TrainedModel {
    std::vector<std::string> feature_names;
    std::variant<LogisticModel, TreeModel, NBModel, ForestModel> model;

    ModelKind kind() const { return static_cast<ModelKind>(model.index()); }
};

// "lr", "dt", "nb" or "rf": the tag used in model files and reports.
std::string model_kind_name(ModelKind kind);

// Probability of class 1 for a raw feature vector matching the model schema.
double predict_proba(const TrainedModel& model, const std::vector<double>& features);

// 1 iff predict_proba >= threshold. The boundary is inclusive.
int predict(const TrainedModel& model, const std::vector<double>& features,
            double threshold = 0.5);

// Model files are single-object JSON; floating-point parameters are written
// in scientific notation with 17 significant digits, which round-trips IEEE
// doubles exactly.
std::string to_json_string(const TrainedModel& model);
TrainedModel from_json_string(const std::string& text);

void serialize_model(const TrainedModel& model, const std::string& path);
TrainedModel deserialize_model(const std::string& path);

} // namespace patentcite

#endif // PATENTCITE_MODEL_HPP
