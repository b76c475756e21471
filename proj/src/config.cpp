#include "moaoff/config.hpp"

#include <algorithm>
#include <cstring>
#include <fstream>
#include <initializer_list>

#include "moaoff/error.hpp"

namespace moaoff {

namespace {

using json = nlohmann::ordered_json;

[[noreturn]] void bad(const std::string& section, const std::string& msg) {
    throw DomainError("config: section \"" + section + "\": " + msg);
}

const json& section_object(const json& parent, const std::string& section, const char* key) {
    const json& v = parent.at(key);
    if (!v.is_object()) {
        bad(section, "must be an object");
    }
    return v;
}

void check_keys(const json& obj, const std::string& section,
                std::initializer_list<const char*> allowed) {
    for (const auto& [key, _] : obj.items()) {
        const bool known = std::any_of(allowed.begin(), allowed.end(),
                                       [&](const char* k) { return key == k; });
        if (!known) {
            bad(section, "unknown key \"" + key + "\"");
        }
    }
}

void patch_num(const json& obj, const std::string& section, const char* key, double& out) {
    if (!obj.contains(key)) {
        return;
    }
    if (!obj.at(key).is_number()) {
        bad(section, "key \"" + std::string(key) + "\" must be a number");
    }
    out = obj.at(key).get<double>();
}

template <typename Int>
void patch_int(const json& obj, const std::string& section, const char* key, Int& out) {
    if (!obj.contains(key)) {
        return;
    }
    if (!obj.at(key).is_number_integer()) {
        bad(section, "key \"" + std::string(key) + "\" must be an integer");
    }
    out = obj.at(key).get<Int>();
}

void patch_bool(const json& obj, const std::string& section, const char* key, bool& out) {
    if (!obj.contains(key)) {
        return;
    }
    if (!obj.at(key).is_boolean()) {
        bad(section, "key \"" + std::string(key) + "\" must be a boolean");
    }
    out = obj.at(key).get<bool>();
}

void parse_calibration_inline(const json& obj, const std::string& section, Calibration& cal) {
    check_keys(obj, section, {"grad_p5", "grad_p95", "lap_p5", "lap_p95", "epsilon"});
    patch_num(obj, section, "grad_p5", cal.grad_p5);
    patch_num(obj, section, "grad_p95", cal.grad_p95);
    patch_num(obj, section, "lap_p5", cal.lap_p5);
    patch_num(obj, section, "lap_p95", cal.lap_p95);
    patch_num(obj, section, "epsilon", cal.epsilon);
}

void parse_perception(const json& obj, const std::filesystem::path& base_dir,
                      PerceptionConfig& out) {
    const std::string section = "perception";
    check_keys(obj, section, {"h0", "w0", "weights", "text", "calibration", "calibration_path"});
    patch_int(obj, section, "h0", out.reference_height);
    patch_int(obj, section, "w0", out.reference_width);
    if (obj.contains("weights")) {
        const json& w = section_object(obj, "perception.weights", "weights");
        check_keys(w, "perception.weights", {"res", "edge", "ent", "lap"});
        patch_num(w, "perception.weights", "res", out.weights.w_res);
        patch_num(w, "perception.weights", "edge", out.weights.w_edge);
        patch_num(w, "perception.weights", "ent", out.weights.w_ent);
        patch_num(w, "perception.weights", "lap", out.weights.w_lap);
    }
    if (obj.contains("text")) {
        const json& t = section_object(obj, "perception.text", "text");
        check_keys(t, "perception.text", {"l0", "gamma", "beta_l", "beta_ner"});
        patch_int(t, "perception.text", "l0", out.text.l0);
        patch_num(t, "perception.text", "gamma", out.text.gamma);
        patch_num(t, "perception.text", "beta_l", out.text.beta_l);
        patch_num(t, "perception.text", "beta_ner", out.text.beta_ner);
    }
    if (obj.contains("calibration") && obj.contains("calibration_path")) {
        bad(section, "give either \"calibration\" or \"calibration_path\", not both");
    }
    if (obj.contains("calibration")) {
        parse_calibration_inline(section_object(obj, "perception.calibration", "calibration"),
                                 "perception.calibration", out.calibration);
    }
    if (obj.contains("calibration_path")) {
        if (!obj.at("calibration_path").is_string()) {
            bad(section, "key \"calibration_path\" must be a string");
        }
        out.calibration =
            load_calibration(base_dir / obj.at("calibration_path").get<std::string>());
    }
}

void parse_policy(const json& obj, PolicyConfig& out) {
    const std::string section = "policy";
    check_keys(obj, section,
               {"tau_text", "tau_image", "ell_max", "beta_bw_mbps", "bandwidth_gate_literal"});
    patch_num(obj, section, "tau_text", out.tau_text);
    patch_num(obj, section, "tau_image", out.tau_image);
    patch_num(obj, section, "ell_max", out.ell_max);
    patch_num(obj, section, "beta_bw_mbps", out.beta_bw_mbps);
    patch_bool(obj, section, "bandwidth_gate_literal", out.bandwidth_gate_literal);
}

void parse_cost_model(const json& obj, CostModel& out) {
    const std::string section = "cost_model";
    check_keys(obj, section,
               {"edge_base_s", "edge_slope_s", "cloud_base_s", "cloud_slope_s", "rtt_s",
                "edge_acc_base", "edge_acc_slope", "cloud_acc", "edge_mem_mb", "cloud_mem_mb",
                "edge_queue_cap"});
    patch_num(obj, section, "edge_base_s", out.edge_base_s);
    patch_num(obj, section, "edge_slope_s", out.edge_slope_s);
    patch_num(obj, section, "cloud_base_s", out.cloud_base_s);
    patch_num(obj, section, "cloud_slope_s", out.cloud_slope_s);
    patch_num(obj, section, "rtt_s", out.rtt_s);
    patch_num(obj, section, "edge_acc_base", out.edge_acc_base);
    patch_num(obj, section, "edge_acc_slope", out.edge_acc_slope);
    patch_num(obj, section, "cloud_acc", out.cloud_acc);
    patch_num(obj, section, "edge_mem_mb", out.edge_mem_mb);
    patch_num(obj, section, "cloud_mem_mb", out.cloud_mem_mb);
    patch_int(obj, section, "edge_queue_cap", out.edge_queue_cap);
}

void parse_dist(const json& obj, const std::string& section, ComplexityDist& out) {
    check_keys(obj, section, {"dist", "a", "b"});
    if (obj.contains("dist")) {
        if (!obj.at("dist").is_string()) {
            bad(section, "key \"dist\" must be a string");
        }
        const std::string name = obj.at("dist").get<std::string>();
        if (name == "uniform") {
            out.kind = ComplexityDist::Kind::Uniform;
        } else if (name == "beta") {
            out.kind = ComplexityDist::Kind::Beta;
        } else {
            bad(section, "unknown distribution \"" + name + "\" (use \"uniform\" or \"beta\")");
        }
    }
    patch_num(obj, section, "a", out.a);
    patch_num(obj, section, "b", out.b);
}

void parse_payload(const json& obj, const std::string& section, PayloadRange& out) {
    check_keys(obj, section, {"lo", "hi"});
    patch_int(obj, section, "lo", out.lo_bytes);
    patch_int(obj, section, "hi", out.hi_bytes);
}

void parse_synthetic(const json& obj, SyntheticSpec& out) {
    const std::string section = "simulation.synthetic";
    check_keys(obj, section,
               {"request_count", "arrival_rate_hz", "mix", "image_complexity", "text_complexity",
                "image_payload_bytes", "text_payload_bytes", "seed"});
    patch_int(obj, section, "request_count", out.request_count);
    patch_num(obj, section, "arrival_rate_hz", out.arrival_rate_hz);
    if (obj.contains("mix")) {
        const json& m = section_object(obj, section + ".mix", "mix");
        check_keys(m, section + ".mix", {"both", "image_only", "text_only"});
        patch_num(m, section + ".mix", "both", out.mix.both);
        patch_num(m, section + ".mix", "image_only", out.mix.image_only);
        patch_num(m, section + ".mix", "text_only", out.mix.text_only);
    }
    if (obj.contains("image_complexity")) {
        parse_dist(section_object(obj, section + ".image_complexity", "image_complexity"),
                   section + ".image_complexity", out.image_complexity);
    }
    if (obj.contains("text_complexity")) {
        parse_dist(section_object(obj, section + ".text_complexity", "text_complexity"),
                   section + ".text_complexity", out.text_complexity);
    }
    if (obj.contains("image_payload_bytes")) {
        parse_payload(section_object(obj, section + ".image_payload_bytes", "image_payload_bytes"),
                      section + ".image_payload_bytes", out.image_payload);
    }
    if (obj.contains("text_payload_bytes")) {
        parse_payload(section_object(obj, section + ".text_payload_bytes", "text_payload_bytes"),
                      section + ".text_payload_bytes", out.text_payload);
    }
    patch_int(obj, section, "seed", out.seed);
}

void parse_simulation(const json& obj, SimulationConfig& out) {
    const std::string section = "simulation";
    check_keys(obj, section,
               {"bandwidths_mbps", "seed", "strategies", "uniform_threshold", "synthetic"});
    if (obj.contains("bandwidths_mbps")) {
        const json& arr = obj.at("bandwidths_mbps");
        if (!arr.is_array() || arr.empty()) {
            bad(section, "key \"bandwidths_mbps\" must be a non-empty array");
        }
        out.bandwidths_mbps.clear();
        for (const json& v : arr) {
            if (!v.is_number()) {
                bad(section, "bandwidths_mbps entries must be numbers");
            }
            out.bandwidths_mbps.push_back(v.get<double>());
        }
    }
    patch_int(obj, section, "seed", out.seed);
    if (obj.contains("strategies")) {
        const json& arr = obj.at("strategies");
        if (!arr.is_array() || arr.empty()) {
            bad(section, "key \"strategies\" must be a non-empty array");
        }
        out.strategies.clear();
        for (const json& v : arr) {
            if (!v.is_string()) {
                bad(section, "strategies entries must be strings");
            }
            try {
                out.strategies.push_back(strategy_from_name(v.get<std::string>()));
            } catch (const DomainError& e) {
                bad(section, e.what());
            }
        }
    }
    patch_num(obj, section, "uniform_threshold", out.uniform_threshold);
    if (obj.contains("synthetic")) {
        parse_synthetic(section_object(obj, "simulation.synthetic", "synthetic"), out.synthetic);
    }
}

json dist_to_json(const ComplexityDist& d) {
    json j;
    j["dist"] = d.kind == ComplexityDist::Kind::Uniform ? "uniform" : "beta";
    j["a"] = d.a;
    j["b"] = d.b;
    return j;
}

json payload_to_json(const PayloadRange& p) {
    json j;
    j["lo"] = p.lo_bytes;
    j["hi"] = p.hi_bytes;
    return j;
}

} // namespace

Config default_config() {
    return Config{};
}

void validate(const Config& cfg) {
    validate(cfg.perception);
    validate(cfg.policy);
    validate(cfg.cost_model);
    validate(cfg.simulation.synthetic);
    if (cfg.simulation.bandwidths_mbps.empty()) {
        throw DomainError("config: section \"simulation\": bandwidths_mbps must be non-empty");
    }
    for (double bw : cfg.simulation.bandwidths_mbps) {
        if (!(bw > 0)) {
            throw DomainError("config: section \"simulation\": bandwidths must be positive");
        }
    }
    if (cfg.simulation.strategies.empty()) {
        throw DomainError("config: section \"simulation\": strategies must be non-empty");
    }
    if (cfg.simulation.uniform_threshold < 0 || cfg.simulation.uniform_threshold > 1) {
        throw DomainError("config: section \"simulation\": uniform_threshold must lie in [0,1]");
    }
}

Config config_from_json(const nlohmann::ordered_json& doc,
                        const std::filesystem::path& base_dir) {
    if (!doc.is_object()) {
        throw DomainError("config: top level must be an object");
    }
    check_keys(doc, "top level", {"schema_version", "perception", "policy", "cost_model", "simulation"});
    if (!doc.contains("schema_version")) {
        throw DomainError("config: missing \"schema_version\"");
    }
    if (!doc.at("schema_version").is_number_integer() ||
        doc.at("schema_version").get<int>() != 1) {
        throw DomainError("config: unsupported schema_version (expected 1)");
    }

    Config cfg = default_config();
    if (doc.contains("perception")) {
        parse_perception(section_object(doc, "perception", "perception"), base_dir, cfg.perception);
    }
    if (doc.contains("policy")) {
        parse_policy(section_object(doc, "policy", "policy"), cfg.policy);
    }
    if (doc.contains("cost_model")) {
        parse_cost_model(section_object(doc, "cost_model", "cost_model"), cfg.cost_model);
    }
    if (doc.contains("simulation")) {
        parse_simulation(section_object(doc, "simulation", "simulation"), cfg.simulation);
    }
    validate(cfg);
    return cfg;
}

Config load_config(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open config file: " + path.string());
    }
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ParseError("config file " + path.string() + ": " + e.what());
    }
    return config_from_json(doc, path.parent_path());
}

nlohmann::ordered_json config_to_json(const Config& cfg) {
    json doc;
    doc["schema_version"] = 1;

    json perception;
    perception["h0"] = cfg.perception.reference_height;
    perception["w0"] = cfg.perception.reference_width;
    perception["weights"] = {{"res", cfg.perception.weights.w_res},
                             {"edge", cfg.perception.weights.w_edge},
                             {"ent", cfg.perception.weights.w_ent},
                             {"lap", cfg.perception.weights.w_lap}};
    perception["text"] = {{"l0", cfg.perception.text.l0},
                          {"gamma", cfg.perception.text.gamma},
                          {"beta_l", cfg.perception.text.beta_l},
                          {"beta_ner", cfg.perception.text.beta_ner}};
    perception["calibration"] = {{"grad_p5", cfg.perception.calibration.grad_p5},
                                 {"grad_p95", cfg.perception.calibration.grad_p95},
                                 {"lap_p5", cfg.perception.calibration.lap_p5},
                                 {"lap_p95", cfg.perception.calibration.lap_p95},
                                 {"epsilon", cfg.perception.calibration.epsilon}};
    doc["perception"] = std::move(perception);

    doc["policy"] = {{"tau_text", cfg.policy.tau_text},
                     {"tau_image", cfg.policy.tau_image},
                     {"ell_max", cfg.policy.ell_max},
                     {"beta_bw_mbps", cfg.policy.beta_bw_mbps},
                     {"bandwidth_gate_literal", cfg.policy.bandwidth_gate_literal}};

    doc["cost_model"] = {{"edge_base_s", cfg.cost_model.edge_base_s},
                         {"edge_slope_s", cfg.cost_model.edge_slope_s},
                         {"cloud_base_s", cfg.cost_model.cloud_base_s},
                         {"cloud_slope_s", cfg.cost_model.cloud_slope_s},
                         {"rtt_s", cfg.cost_model.rtt_s},
                         {"edge_acc_base", cfg.cost_model.edge_acc_base},
                         {"edge_acc_slope", cfg.cost_model.edge_acc_slope},
                         {"cloud_acc", cfg.cost_model.cloud_acc},
                         {"edge_mem_mb", cfg.cost_model.edge_mem_mb},
                         {"cloud_mem_mb", cfg.cost_model.cloud_mem_mb},
                         {"edge_queue_cap", cfg.cost_model.edge_queue_cap}};

    json synthetic;
    synthetic["request_count"] = cfg.simulation.synthetic.request_count;
    synthetic["arrival_rate_hz"] = cfg.simulation.synthetic.arrival_rate_hz;
    synthetic["mix"] = {{"both", cfg.simulation.synthetic.mix.both},
                        {"image_only", cfg.simulation.synthetic.mix.image_only},
                        {"text_only", cfg.simulation.synthetic.mix.text_only}};
    synthetic["image_complexity"] = dist_to_json(cfg.simulation.synthetic.image_complexity);
    synthetic["text_complexity"] = dist_to_json(cfg.simulation.synthetic.text_complexity);
    synthetic["image_payload_bytes"] = payload_to_json(cfg.simulation.synthetic.image_payload);
    synthetic["text_payload_bytes"] = payload_to_json(cfg.simulation.synthetic.text_payload);
    synthetic["seed"] = cfg.simulation.synthetic.seed;

    json simulation;
    simulation["bandwidths_mbps"] = cfg.simulation.bandwidths_mbps;
    simulation["seed"] = cfg.simulation.seed;
    json strategies = json::array();
    for (StrategyKind kind : cfg.simulation.strategies) {
        strategies.push_back(strategy_name(kind));
    }
    simulation["strategies"] = std::move(strategies);
    simulation["uniform_threshold"] = cfg.simulation.uniform_threshold;
    simulation["synthetic"] = std::move(synthetic);
    doc["simulation"] = std::move(simulation);
    return doc;
}

void save_config(const std::filesystem::path& path, const Config& cfg) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw IoError("cannot open for writing: " + path.string());
    }
    out << config_to_json(cfg).dump(2) << "\n";
    if (!out) {
        throw IoError("write failed: " + path.string());
    }
}

} // namespace moaoff
