#include "json_config.hpp"

#include <algorithm>
#include <iterator>

#include "json.hpp"

namespace rmgen::cli {

using nlohmann::json;

namespace {

std::string key_name(std::string k) {
    std::replace(k.begin(), k.end(), '_', '-');
    return k;
}

std::string scalar_text(const json& v) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
    return v.dump();
}

void collect(const json& obj, const std::vector<std::string>& parents, std::vector<CLI::ConfigItem>& out) {
    for (const auto& [k, v] : obj.items()) {
        CLI::ConfigItem item;
        item.parents = parents;
        item.name = key_name(k);
        if (v.is_object()) {
            auto sub = parents;
            sub.push_back(item.name);
            collect(v, sub, out);
            continue;
        }
        if (v.is_array()) {
            for (const auto& e : v) item.inputs.push_back(scalar_text(e));
        } else if (!v.is_null()) {
            item.inputs.push_back(scalar_text(v));
        }
        out.push_back(std::move(item));
    }
}

}  // namespace

std::vector<CLI::ConfigItem> JsonConfig::from_config(std::istream& input) const {
    json doc;
    try {
        doc = json::parse(std::string(std::istreambuf_iterator<char>(input), {}));
    } catch (const json::parse_error& e) {
        throw CLI::ConversionError("config file is not valid JSON: " + std::string(e.what()));
    }
    if (!doc.is_object()) throw CLI::ConversionError("config file must hold a JSON object");

    std::vector<std::string> active;
    for (const auto* sub : root_->get_subcommands()) active.push_back(sub->get_name());

    std::vector<CLI::ConfigItem> items;
    json bare = json::object();
    for (const auto& [k, v] : doc.items()) {
        if (v.is_object()) {
            collect(v, {key_name(k)}, items);
        } else {
            bare[k] = v;
        }
    }
    collect(bare, active, items);
    return items;
}

std::string JsonConfig::to_config(const CLI::App* app, bool default_also, bool, std::string) const {
    json doc = json::object();
    for (const auto* opt : app->get_options()) {
        if (!opt->get_configurable() || opt->get_lnames().empty()) continue;
        const auto& name = opt->get_lnames().front();
        if (opt->count() > 0) {
            const auto& res = opt->results();
            doc[name] = res.size() == 1 ? json(res.front()) : json(res);
        } else if (default_also && !opt->get_default_str().empty()) {
            doc[name] = opt->get_default_str();
        }
    }
    for (const auto* sub : app->get_subcommands({})) {
        json nested = json::parse(to_config(sub, default_also, false, ""));
        if (!nested.empty()) doc[sub->get_name()] = nested;
    }
    return doc.dump(2) + "\n";
}

}  // namespace rmgen::cli
