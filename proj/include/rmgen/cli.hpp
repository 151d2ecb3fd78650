#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "rmgen/diffusion.hpp"
#include "rmgen/eval.hpp"
#include "rmgen/scenario.hpp"

namespace rmgen::cli {

// Which records of a dataset a command works on. The held-out split is the
// last 20% by index.
enum class Split { train, test, all };
Split parse_split(const std::string& s);
scenario::Dataset select_split(const scenario::Dataset& ds, Split split);

struct GenDataArgs {
    std::string regime = "indoor";
    int count = 0;
    std::uint64_t seed = 0;
    std::string out;
    void validate() const;
};

struct SelectArgs {
    std::string data;
    int index = 0;
    std::string cond = "fragments";
    std::string select = "env";
    double percent = 10.0;
    int k = 4;
    int n_subareas = 16;
    int capacity = 10;
    std::uint64_t seed = 0;
    std::string out;
    void validate() const;
};

struct TrainArgs {
    std::string data;
    std::string cond = "fragments";
    std::string select = "env";
    double percent = 10.0;
    int n_subareas = 16;
    int epochs = 100;
    float lr = 1e-4f;
    int batch = 16;
    std::uint64_t seed = 0;
    int steps = 400;  // T
    double beta1 = 1e-4;
    double beta_t = 0.02;
    int base_channels = 32;
    std::string sigma = "posterior";
    std::string split = "train";
    std::string resume;  // continue from this checkpoint
    std::string out;
    void validate() const;
};

struct SampleArgs {
    std::string ckpt;
    std::string cond_file;  // ConditionSet JSON
    std::string data;       // alternative: build the condition from a record
    int index = 0;
    std::uint64_t seed = 0;
    std::string out;  // CSV of dBm values
    std::string ppm;
    void validate() const;
};

struct EvalArgs {
    std::string ckpt;
    std::string data;
    std::vector<double> etr{0.10};
    std::string split = "test";
    int limit = 0;  // 0 = every record
    std::optional<std::string> select;
    std::optional<double> percent;
    std::uint64_t seed = 0;
    double bin_width = 10.0;
    std::string report;  // default: stdout
    std::string csv;
    std::string render;  // directory for PPM files
    void validate() const;
};

struct RenderArgs {
    std::string map;   // CSV of dBm values
    std::string data;  // alternative: a dataset record
    int index = 0;
    std::optional<double> min_dbm;
    std::optional<double> max_dbm;
    std::string out;
    void validate() const;
};

void cmd_gen_data(const GenDataArgs& a, std::ostream& out);
void cmd_select_fragments(const SelectArgs& a, std::ostream& out);
void cmd_train(const TrainArgs& a, std::ostream& out);
void cmd_sample(const SampleArgs& a, std::ostream& out);
eval::EvalReport cmd_eval(const EvalArgs& a, std::ostream& out);
void cmd_render(const RenderArgs& a, std::ostream& out);

// ConditionSet <-> JSON text.
std::string condition_to_json(const encoders::ConditionSet& cs);
encoders::ConditionSet condition_from_json(const std::string& text);

// Radio map <-> CSV (one grid row per line).
std::string map_to_csv(const scenario::RadioMap& map);
scenario::RadioMap map_from_csv(const std::string& text);

// Parses argv-style arguments (without the program name) and runs the
// selected command. Returns the process exit code: 0 success, 2 usage or
// configuration error, 3 storage error, 4 condition error, 1 otherwise.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace rmgen::cli
