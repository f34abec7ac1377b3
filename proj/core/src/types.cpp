#include "pairdiag/types.hpp"

#include "pairdiag/errors.hpp"

#include <cmath>
#include <stdexcept>

namespace pairdiag {

const char* to_string(Multiplicity m) {
    switch (m) {
        case Multiplicity::None: return "none";
        case Multiplicity::Bonferroni: return "bonferroni";
        case Multiplicity::Sidak: return "sidak";
        case Multiplicity::Holm: return "holm";
        case Multiplicity::BH: return "bh";
    }
    return "none";
}

Multiplicity multiplicity_from_string(const std::string& s) {
    if (s == "none") return Multiplicity::None;
    if (s == "bonferroni") return Multiplicity::Bonferroni;
    if (s == "sidak") return Multiplicity::Sidak;
    if (s == "holm") return Multiplicity::Holm;
    if (s == "bh") return Multiplicity::BH;
    throw std::invalid_argument("unknown multiplicity method: " + s);
}

void TestConfig::validate() const {
    if (!(alpha > 0.0 && alpha < 1.0))
        throw std::invalid_argument("TestConfig: alpha must be in (0,1)");
    if (!(power > 0.0 && power < 1.0))
        throw std::invalid_argument("TestConfig: power must be in (0,1)");
    if (family_size < 1)
        throw std::invalid_argument("TestConfig: family size must be >= 1");
}

void ScoreMatrix::validate() const {
    if (items.empty()) throw ValidationError("score matrix: no items");
    if (model_names.empty()) throw ValidationError("score matrix: no models");
    if (scores.size() != model_names.size())
        throw ValidationError("score matrix: model count mismatch");
    if (!clusters.empty() && clusters.size() != items.size())
        throw ValidationError("score matrix: cluster labels do not cover every item");
    for (std::size_t m = 0; m < scores.size(); ++m) {
        if (scores[m].size() != items.size())
            throw ValidationError("score matrix: column '" + model_names[m] +
                                  "' has wrong length");
        for (std::size_t i = 0; i < scores[m].size(); ++i) {
            const double v = scores[m][i];
            if (!std::isfinite(v) || v < 0.0 || v > 1.0)
                throw ValidationError("score matrix: value out of [0,1] at item '" +
                                      items[i] + "', model '" + model_names[m] + "'");
            if (binary && v != 0.0 && v != 1.0)
                throw ValidationError("score matrix flagged binary but value at item '" +
                                      items[i] + "' is not 0/1");
        }
    }
}

} // namespace pairdiag
