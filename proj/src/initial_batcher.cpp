#include "netbatch/initial_batcher.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "netbatch/error.hpp"
#include "netbatch/parallel.hpp"

namespace netbatch {

std::size_t chunk_size(std::size_t n_nets) {
    return std::min<std::size_t>(100'000, std::max<std::size_t>(10'000, n_nets / 10));
}

FeatureRow extract_features(const Net& net, const GridDims& grid) {
    FeatureRow row{};
    const std::size_t k = net.pins.size();
    if (k == 0) return row;
    const auto gx = static_cast<float>(grid.x);
    const auto gy = static_cast<float>(grid.y);
    for (std::size_t slot = 0; slot < kFeaturePins; ++slot) {
        const Pin& p = net.pins[slot % std::min(k, kFeaturePins)];
        row[2 * slot] = static_cast<float>(p.x) / gx;
        row[2 * slot + 1] = static_cast<float>(p.y) / gy;
    }
    return row;
}

FeatureMatrix extract_features(std::span<const Net> nets, const GridDims& grid, unsigned workers) {
    FeatureMatrix m;
    m.values.resize(nets.size() * kFeatureDim);
    constexpr std::size_t kBlock = 4096;
    const std::size_t blocks = (nets.size() + kBlock - 1) / kBlock;
    parallel_for_dynamic(blocks, workers, [&](std::size_t b) {
        const std::size_t end = std::min(nets.size(), (b + 1) * kBlock);
        for (std::size_t i = b * kBlock; i < end; ++i) {
            const FeatureRow row = extract_features(nets[i], grid);
            std::copy(row.begin(), row.end(), m.values.begin() + static_cast<std::ptrdiff_t>(i * kFeatureDim));
        }
    });
    return m;
}

namespace {

// Forward pass for one row; accumulates in double so results do not depend on
// how rows are grouped.
void forward_row(const GeneratorModel& model, std::span<const float> input, std::span<float> out,
                 std::vector<double>& h, std::vector<double>& z) {
    h.assign(input.begin(), input.end());
    for (const DenseLayer& layer : model.layers) {
        z.assign(layer.rows, 0.0);
        for (std::uint32_t r = 0; r < layer.rows; ++r) {
            const float* w = layer.weights.data() + static_cast<std::size_t>(r) * layer.cols;
            double acc = layer.bias[r];
            for (std::uint32_t c = 0; c < layer.cols; ++c) acc += static_cast<double>(w[c]) * h[c];
            z[r] = acc;
        }
        if (layer.layer_norm) {
            double mean = 0.0;
            for (double v : z) mean += v;
            mean /= static_cast<double>(z.size());
            double var = 0.0;
            for (double v : z) var += (v - mean) * (v - mean);
            var /= static_cast<double>(z.size());
            const double inv = 1.0 / std::sqrt(var + static_cast<double>(kLayerNormEpsilon));
            for (double& v : z) v = (v - mean) * inv;
        }
        if (layer.activation == Activation::LeakyRelu) {
            for (double& v : z) v = v >= 0.0 ? v : v * static_cast<double>(layer.leaky_slope);
        }
        if (layer.residual) {
            for (std::size_t i = 0; i < z.size(); ++i) z[i] += h[i];
        }
        h.swap(z);
    }
    const double peak = *std::max_element(h.begin(), h.end());
    double total = 0.0;
    for (double& v : h) {
        v = std::exp(v - peak);
        total += v;
    }
    for (std::size_t i = 0; i < h.size(); ++i) out[i] = static_cast<float>(h[i] / total);
}

}  // namespace

std::vector<float> infer(const GeneratorModel& model, const FeatureMatrix& features, unsigned workers) {
    const std::size_t rows = features.rows();
    const std::size_t width = model.n_batches;
    std::vector<float> probs(rows * width);
    constexpr std::size_t kBlock = 1024;
    const std::size_t blocks = (rows + kBlock - 1) / kBlock;
    parallel_for_dynamic(blocks, workers, [&](std::size_t b) {
        std::vector<double> h;
        std::vector<double> z;
        const std::size_t end = std::min(rows, (b + 1) * kBlock);
        for (std::size_t r = b * kBlock; r < end; ++r) {
            forward_row(model, features.row(r), std::span<float>(probs.data() + r * width, width), h, z);
        }
    });
    return probs;
}

std::uint32_t argmax(std::span<const float> row) {
    std::uint32_t best = 0;
    for (std::uint32_t i = 1; i < row.size(); ++i) {
        if (row[i] > row[best]) best = i;
    }
    return best;
}

AssignmentVector assign_batches(const Netlist& netlist, const GeneratorModel& model,
                                const AssignOptions& options) {
    validate_model(model);
    const std::size_t n = netlist.size();
    AssignmentVector assignment(n, 0);
    if (n == 0) return assignment;
    const std::size_t chunk = std::max<std::size_t>(1, options.chunk.value_or(chunk_size(n)));
    const std::span<const Net> nets(netlist.nets);

    for (std::size_t start = 0; start < n; start += chunk) {
        const std::size_t len = std::min(chunk, n - start);
        const FeatureMatrix features = extract_features(nets.subspan(start, len), netlist.grid, options.workers);
        const std::vector<float> probs = infer(model, features, options.workers);
        for (std::size_t r = 0; r < len; ++r) {
            assignment[start + r] =
                argmax(std::span<const float>(probs.data() + r * model.n_batches, model.n_batches));
        }
        // probs and features go out of scope before the next chunk.
    }
    return assignment;
}

AssignmentVector fallback_assign(const Netlist& netlist, std::uint32_t n_batches, std::uint64_t seed) {
    if (n_batches < 1) fail(ErrorKind::Config, "batch count must be at least 1");
    AssignmentVector assignment(netlist.size(), 0);
    if (n_batches == 1) return assignment;

    // Label cell (x, y) with (x + stride * y + offset) mod B, a skewed lattice
    // that keeps adjacent cells apart.
    const auto stride = static_cast<std::uint64_t>(std::ceil(std::sqrt(static_cast<double>(n_batches))));
    std::mt19937_64 rng(seed);
    const std::uint64_t offset = rng() % n_batches;
    std::vector<std::uint32_t> relabel(n_batches);
    std::iota(relabel.begin(), relabel.end(), 0u);
    std::shuffle(relabel.begin(), relabel.end(), rng);

    for (std::size_t i = 0; i < netlist.size(); ++i) {
        const Point2 c = netlist.nets[i].center;
        const auto cx = static_cast<std::uint64_t>(std::max(0.0, std::floor(c.x)));
        const auto cy = static_cast<std::uint64_t>(std::max(0.0, std::floor(c.y)));
        assignment[i] = relabel[(cx + stride * cy + offset) % n_batches];
    }
    return assignment;
}

std::vector<std::vector<NetId>> group_by_batch(const AssignmentVector& assignment, std::uint32_t n_batches) {
    std::vector<std::size_t> counts(n_batches, 0);
    for (std::uint32_t b : assignment) {
        if (b >= n_batches) fail(ErrorKind::Validation, "assignment refers to batch " + std::to_string(b));
        ++counts[b];
    }
    std::vector<std::vector<NetId>> batches(n_batches);
    for (std::uint32_t b = 0; b < n_batches; ++b) batches[b].reserve(counts[b]);
    for (std::size_t i = 0; i < assignment.size(); ++i) batches[assignment[i]].push_back(static_cast<NetId>(i));
    return batches;
}

}  // namespace netbatch
