#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "netbatch/netlist.hpp"

namespace netbatch {

inline constexpr std::size_t kFeaturePins = 8;
inline constexpr std::size_t kFeatureDim = 2 * kFeaturePins;

using FeatureRow = std::array<float, kFeatureDim>;

// Row-major, kFeatureDim values per net.
struct FeatureMatrix {
    std::vector<float> values;

    std::size_t rows() const { return values.size() / kFeatureDim; }
    std::span<const float> row(std::size_t r) const {
        return {values.data() + r * kFeatureDim, kFeatureDim};
    }
};

// min(10^5, max(10^4, floor(n / 10))).
std::size_t chunk_size(std::size_t n_nets);

// First eight pins as (x / x_g, y / y_g); shorter nets repeat their pins
// cyclically until the row is full.
FeatureRow extract_features(const Net& net, const GridDims& grid);

FeatureMatrix extract_features(std::span<const Net> nets, const GridDims& grid,
                               unsigned workers = 1);

enum class Activation : std::uint8_t { Linear, LeakyRelu };

struct DenseLayer {
    std::uint32_t rows = 0;  // outputs
    std::uint32_t cols = 0;  // inputs
    Activation activation = Activation::Linear;
    float leaky_slope = 0.0f;
    bool residual = false;
    bool layer_norm = false;
    std::vector<float> weights;  // rows * cols, row-major
    std::vector<float> bias;     // rows
};

// Feed-forward generator: each layer computes
//   y = act(norm(W h + b)),  h' = residual ? h + y : y
// and a softmax over the last layer's outputs gives batch probabilities.
struct GeneratorModel {
    std::uint32_t feature_dim = kFeatureDim;
    std::uint32_t n_batches = 0;
    std::vector<DenseLayer> layers;
};

inline constexpr float kLayerNormEpsilon = 1e-5f;

// Throws Model on any shape, tag or flag inconsistency.
void validate_model(const GeneratorModel& model);

// Binary format, little-endian:
//   "LBGEN1", u32 feature_dim, u32 n_batches, u32 n_layers,
//   per layer: u32 rows, u32 cols, u16 tag length, tag bytes
//   ("leaky_relu:<slope>" | "linear"), u8 residual, u8 layer_norm,
//   rows*cols f32 weights (row-major), rows f32 bias;
//   then u32 CRC-32 (zlib polynomial) of every preceding byte.
GeneratorModel load_model(std::istream& in);
GeneratorModel load_model_bytes(std::span<const std::uint8_t> bytes);
GeneratorModel load_model_file(const std::string& path);

std::vector<std::uint8_t> serialize_model(const GeneratorModel& model);
void save_model_file(const std::string& path, const GeneratorModel& model);

// Seeded Gaussian weights in the usual 5-layer residual shape; used for
// fixtures and for exercising the inference path without a trained model.
GeneratorModel make_random_model(std::uint32_t n_batches, std::uint32_t hidden, std::uint64_t seed);

// n_rows x n_batches, row-major probabilities.
std::vector<float> infer(const GeneratorModel& model, const FeatureMatrix& features,
                         unsigned workers = 1);

using AssignmentVector = std::vector<std::uint32_t>;

// Index of the largest entry; the lowest index wins ties.
std::uint32_t argmax(std::span<const float> row);

struct AssignOptions {
    std::optional<std::size_t> chunk;  // defaults to chunk_size(N)
    unsigned workers = 1;
};

AssignmentVector assign_batches(const Netlist& netlist, const GeneratorModel& model,
                                const AssignOptions& options = {});

// Model-free assignment: each net's center cell is mapped onto a seeded
// lattice colouring of the grid, so neighbouring cells land in different
// batches.
AssignmentVector fallback_assign(const Netlist& netlist, std::uint32_t n_batches,
                                 std::uint64_t seed);

// Groups net ids by assigned batch; ids ascend within each batch.
std::vector<std::vector<NetId>> group_by_batch(const AssignmentVector& assignment,
                                               std::uint32_t n_batches);

}  // namespace netbatch
