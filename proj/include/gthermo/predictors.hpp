#pragma once

#include <functional>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "gthermo/states.hpp"
#include "gthermo/transforms.hpp"

namespace gthermo {

enum class StateFamily { Product, TypeI, TypeII, Tmsv };

// Flat parameter set covering every closed-form scenario. Fields that a family
// does not use are ignored (r_a/theta_a etc. only matter for Product).
struct PredictorInput {
    StateFamily family = StateFamily::Product;
    double n_a = 0.0;
    double n_b = 0.0;
    double r_a = 0.0;
    double r_b = 0.0;
    double theta_a = 0.0;
    double theta_b = 0.0;
    double c = 0.0;
    double tmsv_r = 0.0;
    cplx alpha{0.0, 0.0};
    cplx delta{0.0, 0.0};
    double omega_a = 1.0;
    double omega_b = 1.0;
    BilinearTransform transform;
};

struct Prediction {
    std::optional<double> dE_A;
    std::optional<double> dQ;
    std::optional<double> dW_A;
    std::optional<double> net_gain;
};

struct Predictor {
    std::string id;
    std::string summary;
    // Empty when the input lies in the predictor's validity region, otherwise the reason it does not.
    std::function<std::string(const PredictorInput&)> check;
    std::function<Prediction(const PredictorInput&)> predict;
    std::function<PredictorInput(std::mt19937_64&)> sample;
};

const std::vector<Predictor>& predictor_registry();
const Predictor& find_predictor(std::string_view id);

StateRecipe to_recipe(const PredictorInput& in);
TwoModeState build_state(const PredictorInput& in);
// Fails with ValidationError for recipes that no predictor family describes (custom ε).
PredictorInput predictor_input(const StateRecipe& recipe, const BilinearTransform& t);

// Balanced FC (θ = π/4, φ = 0) on equally squeezed thermal inputs cools the bath iff N_B exceeds this.
double balanced_fc_cooling_threshold(double n_a, double f_s);
// Type-I inputs under PA(r): the bath cools iff |c| exceeds this.
double pa_type1_cooling_threshold(double n_a, double n_b, double r);
// Type-II inputs under FC(θ): the bath cools iff |c| exceeds this.
double fc_type2_cooling_threshold(double n_a, double n_b, double theta);

}  // namespace gthermo
