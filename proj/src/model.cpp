#include <zlib.h>

#include <bit>
#include <charconv>
#include <cmath>
#include <cstring>
#include <fstream>
#include <iterator>
#include <random>

#include "netbatch/error.hpp"
#include "netbatch/initial_batcher.hpp"

namespace netbatch {

namespace {

constexpr char kMagic[] = {'L', 'B', 'G', 'E', 'N', '1'};

static_assert(std::endian::native == std::endian::little,
              "model I/O assumes a little-endian host");

[[noreturn]] void model_fail(const std::string& what) { fail(ErrorKind::Model, what); }

std::uint32_t crc32_of(std::span<const std::uint8_t> bytes) {
    uLong crc = crc32(0L, Z_NULL, 0);
    // zlib takes uInt lengths; feed large buffers in pieces.
    std::size_t offset = 0;
    while (offset < bytes.size()) {
        const auto piece = static_cast<uInt>(std::min<std::size_t>(bytes.size() - offset, 1u << 30));
        crc = crc32(crc, bytes.data() + offset, piece);
        offset += piece;
    }
    return static_cast<std::uint32_t>(crc);
}

class Reader {
public:
    explicit Reader(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

    template <typename T>
    T read() {
        T value;
        need(sizeof(T));
        std::memcpy(&value, bytes_.data() + pos_, sizeof(T));
        pos_ += sizeof(T);
        return value;
    }

    std::string read_string(std::size_t n) {
        need(n);
        std::string s(reinterpret_cast<const char*>(bytes_.data() + pos_), n);
        pos_ += n;
        return s;
    }

    void read_floats(std::vector<float>& out, std::size_t n) {
        need(n * sizeof(float));
        out.resize(n);
        std::memcpy(out.data(), bytes_.data() + pos_, n * sizeof(float));
        pos_ += n * sizeof(float);
    }

    std::size_t position() const { return pos_; }
    std::size_t remaining() const { return bytes_.size() - pos_; }

private:
    void need(std::size_t n) const {
        if (n > remaining()) model_fail("model file is truncated");
    }

    std::span<const std::uint8_t> bytes_;
    std::size_t pos_ = 0;
};

class Writer {
public:
    template <typename T>
    void write(T value) {
        const auto* p = reinterpret_cast<const std::uint8_t*>(&value);
        bytes.insert(bytes.end(), p, p + sizeof(T));
    }
    void write_bytes(const void* data, std::size_t n) {
        const auto* p = static_cast<const std::uint8_t*>(data);
        bytes.insert(bytes.end(), p, p + n);
    }

    std::vector<std::uint8_t> bytes;
};

std::string activation_tag(const DenseLayer& layer) {
    if (layer.activation == Activation::Linear) return "linear";
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), layer.leaky_slope);
    return "leaky_relu:" + std::string(buf, end);
}

void parse_activation(const std::string& tag, DenseLayer& layer) {
    if (tag == "linear") {
        layer.activation = Activation::Linear;
        layer.leaky_slope = 0.0f;
        return;
    }
    const std::string prefix = "leaky_relu:";
    if (tag.rfind(prefix, 0) == 0) {
        const char* first = tag.data() + prefix.size();
        const char* last = tag.data() + tag.size();
        float slope = 0.0f;
        auto [ptr, ec] = std::from_chars(first, last, slope);
        if (ec == std::errc() && ptr == last && std::isfinite(slope)) {
            layer.activation = Activation::LeakyRelu;
            layer.leaky_slope = slope;
            return;
        }
    }
    model_fail("unknown activation tag '" + tag + "'");
}

}  // namespace

void validate_model(const GeneratorModel& model) {
    if (model.feature_dim != kFeatureDim) {
        model_fail("feature_dim must be " + std::to_string(kFeatureDim) + ", got " +
                   std::to_string(model.feature_dim));
    }
    if (model.n_batches < 1) model_fail("model must produce at least one batch");
    if (model.layers.empty()) model_fail("model has no layers");
    std::uint32_t width = model.feature_dim;
    for (std::size_t i = 0; i < model.layers.size(); ++i) {
        const DenseLayer& layer = model.layers[i];
        const std::string who = "layer " + std::to_string(i);
        if (layer.rows == 0 || layer.cols == 0) model_fail(who + " has an empty shape");
        if (layer.cols != width) {
            model_fail(who + " expects " + std::to_string(layer.cols) + " inputs but receives " +
                       std::to_string(width));
        }
        if (layer.residual && layer.rows != layer.cols) model_fail(who + " is residual but not square");
        if (layer.weights.size() != static_cast<std::size_t>(layer.rows) * layer.cols ||
            layer.bias.size() != layer.rows) {
            model_fail(who + " payload does not match its shape");
        }
        width = layer.rows;
    }
    if (width != model.n_batches) {
        model_fail("last layer yields " + std::to_string(width) + " outputs, header says " +
                   std::to_string(model.n_batches));
    }
}

GeneratorModel load_model_bytes(std::span<const std::uint8_t> bytes) {
    if (bytes.size() < sizeof(kMagic) + 4 * sizeof(std::uint32_t)) model_fail("model file is truncated");
    if (std::memcmp(bytes.data(), kMagic, sizeof(kMagic)) != 0) model_fail("bad magic, expected LBGEN1");

    const std::size_t body = bytes.size() - sizeof(std::uint32_t);
    std::uint32_t stored_crc = 0;
    std::memcpy(&stored_crc, bytes.data() + body, sizeof(stored_crc));
    if (crc32_of(bytes.first(body)) != stored_crc) model_fail("checksum mismatch");

    Reader in(bytes.first(body));
    in.read_string(sizeof(kMagic));
    GeneratorModel model;
    model.feature_dim = in.read<std::uint32_t>();
    model.n_batches = in.read<std::uint32_t>();
    const auto n_layers = in.read<std::uint32_t>();
    if (n_layers == 0 || n_layers > 4096) model_fail("implausible layer count " + std::to_string(n_layers));

    for (std::uint32_t i = 0; i < n_layers; ++i) {
        DenseLayer layer;
        layer.rows = in.read<std::uint32_t>();
        layer.cols = in.read<std::uint32_t>();
        const auto tag_len = in.read<std::uint16_t>();
        parse_activation(in.read_string(tag_len), layer);
        layer.residual = in.read<std::uint8_t>() != 0;
        layer.layer_norm = in.read<std::uint8_t>() != 0;
        const auto n_weights = static_cast<std::uint64_t>(layer.rows) * layer.cols;
        if (n_weights * sizeof(float) > in.remaining()) model_fail("model file is truncated");
        in.read_floats(layer.weights, static_cast<std::size_t>(n_weights));
        in.read_floats(layer.bias, layer.rows);
        model.layers.push_back(std::move(layer));
    }
    if (in.remaining() != 0) model_fail("trailing bytes before checksum");
    validate_model(model);
    return model;
}

GeneratorModel load_model(std::istream& in) {
    std::vector<std::uint8_t> bytes{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
    return load_model_bytes(bytes);
}

GeneratorModel load_model_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(ErrorKind::Io, "cannot open model '" + path + "'");
    return load_model(in);
}

std::vector<std::uint8_t> serialize_model(const GeneratorModel& model) {
    validate_model(model);
    Writer out;
    out.write_bytes(kMagic, sizeof(kMagic));
    out.write<std::uint32_t>(model.feature_dim);
    out.write<std::uint32_t>(model.n_batches);
    out.write<std::uint32_t>(static_cast<std::uint32_t>(model.layers.size()));
    for (const DenseLayer& layer : model.layers) {
        out.write<std::uint32_t>(layer.rows);
        out.write<std::uint32_t>(layer.cols);
        const std::string tag = activation_tag(layer);
        out.write<std::uint16_t>(static_cast<std::uint16_t>(tag.size()));
        out.write_bytes(tag.data(), tag.size());
        out.write<std::uint8_t>(layer.residual ? 1 : 0);
        out.write<std::uint8_t>(layer.layer_norm ? 1 : 0);
        out.write_bytes(layer.weights.data(), layer.weights.size() * sizeof(float));
        out.write_bytes(layer.bias.data(), layer.bias.size() * sizeof(float));
    }
    out.write<std::uint32_t>(crc32_of(out.bytes));
    return std::move(out.bytes);
}

void save_model_file(const std::string& path, const GeneratorModel& model) {
    const auto bytes = serialize_model(model);
    std::ofstream out(path, std::ios::binary);
    if (!out) fail(ErrorKind::Io, "cannot write model '" + path + "'");
    out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    if (!out) fail(ErrorKind::Io, "write failed for '" + path + "'");
}

GeneratorModel make_random_model(std::uint32_t n_batches, std::uint32_t hidden, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    auto dense = [&](std::uint32_t rows, std::uint32_t cols, Activation act, bool residual, bool norm) {
        DenseLayer layer;
        layer.rows = rows;
        layer.cols = cols;
        layer.activation = act;
        layer.leaky_slope = act == Activation::LeakyRelu ? 0.2f : 0.0f;
        layer.residual = residual;
        layer.layer_norm = norm;
        std::normal_distribution<float> gauss(0.0f, 1.0f / std::sqrt(static_cast<float>(cols)));
        layer.weights.resize(static_cast<std::size_t>(rows) * cols);
        for (float& w : layer.weights) w = gauss(rng);
        layer.bias.assign(rows, 0.0f);
        return layer;
    };
    GeneratorModel model;
    model.n_batches = n_batches;
    model.layers.push_back(dense(hidden, kFeatureDim, Activation::LeakyRelu, false, true));
    for (int i = 0; i < 3; ++i) model.layers.push_back(dense(hidden, hidden, Activation::LeakyRelu, true, true));
    model.layers.push_back(dense(n_batches, hidden, Activation::Linear, false, false));
    validate_model(model);
    return model;
}

}  // namespace netbatch
