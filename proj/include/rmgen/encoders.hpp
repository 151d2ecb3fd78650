#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "rmgen/compute/adam.hpp"
#include "rmgen/compute/tensor.hpp"
#include "rmgen/scenario.hpp"
#include "rmgen/selection.hpp"

namespace rmgen::encoders {

using compute::ParameterStore;
using compute::Tensor;

enum class ConditionKind : std::int32_t { fragments = 0, tx_locations = 1 };

std::string to_string(ConditionKind k);
ConditionKind parse_condition_kind(const std::string& s);  // "fragments" | "tx"

struct ConditionSet {
    ConditionKind kind = ConditionKind::fragments;
    std::vector<selection::Fragment> fragments;
    std::vector<scenario::TxLocation> tx_list;
    int capacity = 10;

    // Throws ConditionError on kind/field mismatch or overflow.
    void validate() const;
    bool operator==(const ConditionSet&) const = default;
};

struct ConditionEmbedding {
    std::vector<float> vector;
};

// Linear map of dBm values onto [-1, 1] using dataset bounds.
struct Normalization {
    double min_dbm = -100.0;
    double max_dbm = 0.0;

    float normalize(double dbm) const;
    double denormalize(float x) const;
    bool operator==(const Normalization&) const = default;
};

struct EncoderConfig {
    int grid_n = 32;
    int d_cond = 64;
    int hidden = 128;
    int fragment_k = 4;
    int fragment_capacity = 10;
    int tx_capacity = 2;
    int tx_embed = 32;

    int capacity(ConditionKind kind) const {
        return kind == ConditionKind::fragments ? fragment_capacity : tx_capacity;
    }
    int fragment_width() const { return fragment_k * fragment_k + 2; }
};

// Row-major normalized values followed by (row/grid_n, col/grid_n).
std::vector<float> flatten_fragment(const selection::Fragment& f, const Normalization& norm, int grid_n);

class ConditionEncoder {
public:
    virtual ~ConditionEncoder() = default;
    virtual ConditionKind kind() const = 0;
    // [batch, d_cond]; differentiable w.r.t. the encoder's parameters.
    virtual Tensor encode(std::span<const ConditionSet> batch) const = 0;
    ConditionEmbedding encode_one(const ConditionSet& c) const;
};

// Flatten -> concatenate -> zero-pad to capacity -> 3-layer MLP (two SiLU
// hidden layers, linear output).
class FragmentEncoder final : public ConditionEncoder {
public:
    FragmentEncoder(ParameterStore& store, const EncoderConfig& cfg, const Normalization& norm, Rng& rng);

    ConditionKind kind() const override { return ConditionKind::fragments; }
    Tensor encode(std::span<const ConditionSet> batch) const override;

    // Padded MLP input for one condition set (length capacity * (k^2 + 2)).
    std::vector<float> input_vector(const ConditionSet& c) const;

private:
    EncoderConfig cfg_;
    Normalization norm_;
    Tensor w1_, b1_, w2_, b2_, w3_, b3_;
};

// Shared per-Tx coordinate network (2 -> tx_embed -> tx_embed), slots
// concatenated in list order, zero-padded to capacity, then linear to d_cond.
class TxEncoder final : public ConditionEncoder {
public:
    TxEncoder(ParameterStore& store, const EncoderConfig& cfg, Rng& rng);

    ConditionKind kind() const override { return ConditionKind::tx_locations; }
    Tensor encode(std::span<const ConditionSet> batch) const override;

    // Concatenated, padded per-Tx embeddings [batch, capacity * tx_embed].
    Tensor slot_embeddings(std::span<const ConditionSet> batch) const;

    // Normalized (x/grid_n, y/grid_n) network input of one transmitter.
    std::pair<float, float> normalized_input(const scenario::TxLocation& tx) const;

private:
    EncoderConfig cfg_;
    Tensor wa_, ba_, wb_, bb_, wo_, bo_;
};

std::unique_ptr<ConditionEncoder> make_encoder(ConditionKind kind, ParameterStore& store, const EncoderConfig& cfg,
                                               const Normalization& norm, Rng& rng);

ConditionEmbedding encode_fragments(const ConditionSet& c, const FragmentEncoder& enc);
ConditionEmbedding encode_tx(const ConditionSet& c, const TxEncoder& enc);

}  // namespace rmgen::encoders
