#include "segdiscover/core/config.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "segdiscover/core/error.hpp"

namespace segdiscover::core {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

double parse_double(const std::string& key, const std::string& v) {
    double out = 0;
    const auto res = std::from_chars(v.data(), v.data() + v.size(), out);
    if (res.ec != std::errc() || res.ptr != v.data() + v.size()) {
        throw Error("config: invalid number for '" + key + "': " + v);
    }
    return out;
}

long long parse_int(const std::string& key, const std::string& v) {
    long long out = 0;
    const auto res = std::from_chars(v.data(), v.data() + v.size(), out);
    if (res.ec != std::errc() || res.ptr != v.data() + v.size()) {
        throw Error("config: invalid integer for '" + key + "': " + v);
    }
    return out;
}

int parse_i32(const std::string& key, const std::string& v) {
    const long long x = parse_int(key, v);
    if (x < -2147483647LL || x > 2147483647LL) throw Error("config: value out of range for '" + key + "'");
    return static_cast<int>(x);
}

bool parse_bool(const std::string& key, const std::string& v) {
    if (v == "true" || v == "1") return true;
    if (v == "false" || v == "0") return false;
    throw Error("config: invalid boolean for '" + key + "': " + v);
}

std::string fmt(double x) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), x);
    return std::string(buf, res.ptr);
}

}  // namespace

void Config::set(const std::string& key, const std::string& raw) {
    const std::string value = trim(raw);
    if (key == "felz_scale") felz_scale = parse_double(key, value);
    else if (key == "felz_sigma") felz_sigma = parse_double(key, value);
    else if (key == "min_size") {
        if (value == "auto") min_size.reset();
        else min_size = parse_i32(key, value);
    }
    else if (key == "merge_hue_threshold") merge_hue_threshold = parse_double(key, value);
    else if (key == "merge_area_factor") merge_area_factor = parse_double(key, value);
    else if (key == "merge_ratio_threshold") merge_ratio_threshold = parse_double(key, value);
    else if (key == "crop_size") crop_size = parse_i32(key, value);
    else if (key == "K") K = parse_i32(key, value);
    else if (key == "C") C = parse_i32(key, value);
    else if (key == "spectral_sigma") spectral_sigma = parse_double(key, value);
    else if (key == "kmeans_batch_size") kmeans_batch_size = parse_i32(key, value);
    else if (key == "kmeans_max_iter") kmeans_max_iter = parse_i32(key, value);
    else if (key == "kmeans_patience") kmeans_patience = parse_i32(key, value);
    else if (key == "normalize_embeddings") normalize_embeddings = parse_bool(key, value);
    else if (key == "lr") lr = parse_double(key, value);
    else if (key == "momentum") momentum = parse_double(key, value);
    else if (key == "weight_decay") weight_decay = parse_double(key, value);
    else if (key == "epochs") epochs = parse_i32(key, value);
    else if (key == "pixels_per_step") pixels_per_step = parse_i32(key, value);
    else if (key == "augment_crop") augment_crop = parse_bool(key, value);
    else if (key == "augment_flip") augment_flip = parse_bool(key, value);
    else if (key == "augment_saturation") augment_saturation = parse_bool(key, value);
    else if (key == "seed") {
        const long long s = parse_int(key, value);
        if (s < 0) throw Error("config: seed must be non-negative");
        seed = static_cast<std::uint64_t>(s);
    }
    else throw Error("config: unknown key '" + key + "'");
}

void Config::merge_file(const std::filesystem::path& file) {
    std::ifstream in(file);
    if (!in) throw Error("config file not found: " + file.string());
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string t = trim(line);
        if (t.empty() || t.front() == '#') continue;
        const auto eq = t.find('=');
        if (eq == std::string::npos) {
            throw Error("config: " + file.string() + ":" + std::to_string(lineno) + ": expected key=value");
        }
        set(trim(t.substr(0, eq)), t.substr(eq + 1));
    }
}

void Config::validate() const {
    auto fail = [](const std::string& msg) { throw Error("config: " + msg); };
    if (!(felz_scale > 0)) fail("felz_scale must be > 0");
    if (!(felz_sigma >= 0)) fail("felz_sigma must be >= 0");
    if (min_size && *min_size < 1) fail("min_size must be >= 1 or auto");
    if (crop_size < 1) fail("crop_size must be >= 1");
    if (C < 1) fail("C must be >= 1");
    if (K < C) fail("K must be >= C");
    if (K > 1000) fail("K must be <= 1000");
    if (!(spectral_sigma > 0)) fail("spectral_sigma must be > 0");
    if (kmeans_batch_size < 1) fail("kmeans_batch_size must be >= 1");
    if (kmeans_max_iter < 1) fail("kmeans_max_iter must be >= 1");
    if (kmeans_patience < 1) fail("kmeans_patience must be >= 1");
    if (!(lr > 0)) fail("lr must be > 0");
    if (momentum < 0 || momentum >= 1) fail("momentum must be in [0, 1)");
    if (weight_decay < 0) fail("weight_decay must be >= 0");
    if (epochs < 0) fail("epochs must be >= 0");
    if (pixels_per_step < 1) fail("pixels_per_step must be >= 1");
}

std::string Config::to_text() const {
    std::ostringstream out;
    auto b = [](bool v) { return v ? "true" : "false"; };
    out << "felz_scale=" << fmt(felz_scale) << '\n'
        << "felz_sigma=" << fmt(felz_sigma) << '\n'
        << "min_size=" << (min_size ? std::to_string(*min_size) : std::string("auto")) << '\n'
        << "merge_hue_threshold=" << fmt(merge_hue_threshold) << '\n'
        << "merge_area_factor=" << fmt(merge_area_factor) << '\n'
        << "merge_ratio_threshold=" << fmt(merge_ratio_threshold) << '\n'
        << "crop_size=" << crop_size << '\n'
        << "K=" << K << '\n'
        << "C=" << C << '\n'
        << "spectral_sigma=" << fmt(spectral_sigma) << '\n'
        << "kmeans_batch_size=" << kmeans_batch_size << '\n'
        << "kmeans_max_iter=" << kmeans_max_iter << '\n'
        << "kmeans_patience=" << kmeans_patience << '\n'
        << "normalize_embeddings=" << b(normalize_embeddings) << '\n'
        << "lr=" << fmt(lr) << '\n'
        << "momentum=" << fmt(momentum) << '\n'
        << "weight_decay=" << fmt(weight_decay) << '\n'
        << "epochs=" << epochs << '\n'
        << "pixels_per_step=" << pixels_per_step << '\n'
        << "augment_crop=" << b(augment_crop) << '\n'
        << "augment_flip=" << b(augment_flip) << '\n'
        << "augment_saturation=" << b(augment_saturation) << '\n'
        << "seed=" << seed << '\n';
    return out.str();
}

Config Config::from_file(const std::filesystem::path& file) {
    Config c;
    c.merge_file(file);
    return c;
}

}  // namespace segdiscover::core
