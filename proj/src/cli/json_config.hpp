#pragma once

#include <CLI11.hpp>

namespace rmgen::cli {

// JSON config files for CLI11. Top-level objects named after a subcommand
// hold that subcommand's flags; bare keys go to the subcommand being run.
// Underscores in keys are read as dashes.
class JsonConfig : public CLI::Config {
public:
    explicit JsonConfig(const CLI::App* root) : root_(root) {}
    std::string to_config(const CLI::App* app, bool default_also, bool write_description,
                          std::string prefix) const override;
    std::vector<CLI::ConfigItem> from_config(std::istream& input) const override;

private:
    const CLI::App* root_;
};

}  // namespace rmgen::cli
