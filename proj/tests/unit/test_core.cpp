#include <doctest.h>

#include <png.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>

#include "segdiscover/core/color.hpp"
#include "segdiscover/core/config.hpp"
#include "segdiscover/core/error.hpp"
#include "segdiscover/core/image_io.hpp"
#include "segdiscover/core/manifest.hpp"
#include "segdiscover/core/transform.hpp"

namespace fs = std::filesystem;
using namespace segdiscover;
using namespace segdiscover::core;

namespace {

fs::path tmp(const std::string& name) {
    fs::create_directories(TEST_TMP_DIR);
    return fs::path(TEST_TMP_DIR) / name;
}

void write_bytes(const fs::path& p, const std::string& bytes) {
    std::ofstream out(p, std::ios::binary);
    out << bytes;
}

void write_png_16bit_rgb(const fs::path& p) {
    FILE* f = std::fopen(p.string().c_str(), "wb");
    png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    png_infop info = png_create_info_struct(png);
    png_init_io(png, f);
    png_set_IHDR(png, info, 2, 2, 16, PNG_COLOR_TYPE_RGB, PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT,
                 PNG_FILTER_TYPE_DEFAULT);
    png_write_info(png, info);
    std::vector<png_byte> row(2 * 3 * 2, 0x7f);
    for (int r = 0; r < 2; ++r) png_write_row(png, row.data());
    png_write_end(png, nullptr);
    png_destroy_write_struct(&png, &info);
    std::fclose(f);
}

template <class F>
std::string error_of(F&& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.what();
    }
    return {};
}

}  // namespace

TEST_CASE("PPM decode is exact") {
    const auto p = tmp("four.ppm");
    std::string bytes = "P6\n2 2\n255\n";
    const unsigned char px[] = {0, 0, 0, 255, 255, 255, 255, 0, 0, 0, 255, 0};
    bytes.append(reinterpret_cast<const char*>(px), sizeof px);
    write_bytes(p, bytes);
    const Image img = load_image(p);
    REQUIRE(img.height == 2);
    REQUIRE(img.width == 2);
    CHECK(img.pixel(0, 0) == std::array<std::uint8_t, 3>{0, 0, 0});
    CHECK(img.pixel(0, 1) == std::array<std::uint8_t, 3>{255, 255, 255});
    CHECK(img.pixel(1, 0) == std::array<std::uint8_t, 3>{255, 0, 0});
    CHECK(img.pixel(1, 1) == std::array<std::uint8_t, 3>{0, 255, 0});
}

TEST_CASE("image decode errors") {
    const auto p16 = tmp("deep.png");
    write_png_16bit_rgb(p16);
    CHECK(error_of([&] { load_image(p16); }).find("unsupported bit depth") != std::string::npos);

    const auto gray = tmp("gray.png");
    save_label_map(gray, LabelMap(3, 3, 1));
    CHECK(error_of([&] { load_image(gray); }).find("unsupported") != std::string::npos);

    CHECK_THROWS_AS(load_image(tmp("does_not_exist.png")), Error);
}

TEST_CASE("PNG and PPM round trips are bit-identical") {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<int> byte(0, 255);
    for (auto [h, w] : {std::pair{1, 1}, std::pair{3, 17}, std::pair{32, 5}}) {
        Image img(h, w);
        for (auto& v : img.data) v = static_cast<std::uint8_t>(byte(rng));
        save_image(tmp("rt.png"), img);
        CHECK(load_image(tmp("rt.png")) == img);
        save_ppm(tmp("rt.ppm"), img);
        CHECK(load_image(tmp("rt.ppm")) == img);
    }
}

TEST_CASE("label map round trip keeps ignore and large ids") {
    LabelMap m(4, 5);
    for (std::size_t i = 0; i < m.labels.size(); ++i) m.labels[i] = static_cast<std::uint32_t>(i * 3001 % 65535);
    m.labels[3] = LabelMap::kIgnore;
    save_label_map(tmp("labels.png"), m);
    CHECK(load_label_map(tmp("labels.png")) == m);
    m.labels[0] = 70000;
    CHECK_THROWS_AS(save_label_map(tmp("labels_big.png"), m), Error);
}

TEST_CASE("rgb_to_hsv reference values") {
    const Hsv red = rgb_to_hsv({255, 0, 0});
    CHECK(red.hue == doctest::Approx(0.0));
    CHECK(red.saturation == doctest::Approx(1.0));
    CHECK(red.value == doctest::Approx(1.0));
    CHECK(rgb_to_hsv({0, 255, 0}).hue == doctest::Approx(120.0));
    CHECK(rgb_to_hsv({0, 0, 255}).hue == doctest::Approx(240.0));
    const Hsv gray = rgb_to_hsv({128, 128, 128});
    CHECK(gray.hue == 0.0f);
    CHECK(gray.saturation == 0.0f);
    CHECK(gray.value == doctest::Approx(128.0 / 255.0));
    CHECK(rgb_to_hsv({255, 0, 1}).hue < 360.0f);
}

TEST_CASE("hsv round trip within one step for every 8-bit triple") {
    int worst = 0;
    for (int r = 0; r < 256; ++r) {
        for (int g = 0; g < 256; ++g) {
            for (int b = 0; b < 256; ++b) {
                const std::array<std::uint8_t, 3> rgb{static_cast<std::uint8_t>(r), static_cast<std::uint8_t>(g),
                                                      static_cast<std::uint8_t>(b)};
                const Hsv hsv = rgb_to_hsv(rgb);
                REQUIRE(hsv.hue >= 0.0f);
                REQUIRE(hsv.hue < 360.0f);
                const auto back = hsv_to_rgb(hsv);
                for (int ch = 0; ch < 3; ++ch) worst = std::max(worst, std::abs(back[ch] - rgb[ch]));
            }
        }
    }
    CHECK(worst <= 1);
}

TEST_CASE("hue distance is circular") {
    CHECK(hue_distance(350, 10) == doctest::Approx(20));
    CHECK(hue_distance(10, 350) == doctest::Approx(20));
    CHECK(hue_distance(0, 180) == doctest::Approx(180));
    CHECK(hue_distance(90, 90) == 0);
}

TEST_CASE("dataset mean colour") {
    CHECK(dataset_mean_color(std::vector<Image>{Image(3, 4, {10, 20, 30})}) == RgbMean{10, 20, 30});

    Image two(1, 2);
    two.set_pixel(0, 1, {255, 255, 255});
    CHECK(dataset_mean_color(std::vector<Image>{two}) == RgbMean{127.5, 127.5, 127.5});

    CHECK_THROWS_AS(dataset_mean_color(Manifest{}), Error);
    CHECK_THROWS_AS(dataset_mean_color(std::vector<Image>{}), Error);
}

TEST_CASE("dataset mean colour ignores order and splitting") {
    std::mt19937_64 rng(3);
    std::uniform_int_distribution<int> byte(0, 255);
    Image a(6, 8), b(3, 5);
    for (auto& v : a.data) v = static_cast<std::uint8_t>(byte(rng));
    for (auto& v : b.data) v = static_cast<std::uint8_t>(byte(rng));
    const RgbMean ab = dataset_mean_color(std::vector<Image>{a, b});
    CHECK(dataset_mean_color(std::vector<Image>{b, a}) == ab);
    const Image top = crop(a, 0, 0, 2, 8), bottom = crop(a, 2, 0, 4, 8);
    CHECK(dataset_mean_color(std::vector<Image>{top, b, bottom}) == ab);

    save_image(tmp("ma.png"), a);
    save_image(tmp("mb.png"), b);
    CHECK(dataset_mean_color(Manifest({tmp("mb.png"), tmp("ma.png")})) == ab);
}

TEST_CASE("manifest parsing") {
    const auto dir = tmp("manifest_dir");
    fs::create_directories(dir);
    write_bytes(dir / "list.txt", "# images\nx.png\n\n/abs/y.png\n");
    const Manifest m = Manifest::load(dir / "list.txt");
    REQUIRE(m.size() == 2);
    CHECK(m.path(0) == dir / "x.png");
    CHECK(m.path(1) == fs::path("/abs/y.png"));

    write_bytes(dir / "dup.txt", "x.png\nx.png\n");
    CHECK(error_of([&] { Manifest::load(dir / "dup.txt"); }).find("duplicate") != std::string::npos);
    CHECK_THROWS_AS(Manifest::load(dir / "missing.txt"), Error);
}

TEST_CASE("config defaults") {
    const Config c;
    CHECK(c.felz_scale == 1000.0);
    CHECK(!c.min_size.has_value());
    CHECK(c.merge_hue_threshold == 40.0);
    CHECK(c.K == 200);
    CHECK(c.C == 27);
    CHECK(c.spectral_sigma == 1e-5);
    CHECK(c.kmeans_batch_size == 1000);
    CHECK(c.kmeans_max_iter == 10000);
    CHECK(c.kmeans_patience == 100);
    CHECK(c.lr == 1e-3);
    CHECK(c.momentum == 0.9);
    CHECK(c.weight_decay == 5e-4);
    CHECK(c.epochs == 30);
    CHECK_NOTHROW(c.validate());
}

TEST_CASE("config parsing and validation") {
    Config c;
    c.set("K", "16");
    c.set("C", "4");
    c.set("min_size", "120");
    c.set("spectral_sigma", "2.5");
    c.set("augment_flip", "false");
    CHECK(c.K == 16);
    CHECK(c.min_size == 120);
    CHECK(c.spectral_sigma == 2.5);
    CHECK(!c.augment_flip);
    c.set("min_size", "auto");
    CHECK(!c.min_size.has_value());

    CHECK(error_of([&] { c.set("colour", "1"); }).find("unknown key") != std::string::npos);
    CHECK_THROWS_AS(c.set("K", "many"), Error);

    Config bad;
    bad.K = 3;
    bad.C = 4;
    CHECK_THROWS_AS(bad.validate(), Error);
    bad.K = 1001;
    CHECK_THROWS_AS(bad.validate(), Error);

    const auto file = tmp("cfg.txt");
    write_bytes(file, c.to_text());
    Config back = Config::from_file(file);
    CHECK(back.to_text() == c.to_text());

    write_bytes(file, "# comment\nK = 40\n\nbogus=1\n");
    CHECK_THROWS_AS(Config::from_file(file), Error);
}

TEST_CASE("partition helpers") {
    LabelMap m(2, 3);
    m.labels = {5, 5, 2, 7, 2, 2};
    CHECK(!is_contiguous_partition(m));
    const LabelMap r = relabel_by_first_appearance(m);
    CHECK(r.labels == std::vector<std::uint32_t>{0, 0, 1, 2, 1, 1});
    CHECK(is_contiguous_partition(r));
    CHECK(r.label_count() == 3);
}

TEST_CASE("geometric transforms") {
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<int> byte(0, 255);
    Image img(5, 7);
    for (auto& v : img.data) v = static_cast<std::uint8_t>(byte(rng));
    CHECK(resize_bilinear(img, 5, 7) == img);
    CHECK(flip_horizontal(flip_horizontal(img)) == img);
    CHECK(flip_horizontal(img).pixel(2, 0) == img.pixel(2, 6));

    LabelMap m(5, 7);
    for (std::size_t i = 0; i < m.labels.size(); ++i) m.labels[i] = static_cast<std::uint32_t>(i % 4);
    CHECK(resize_nearest(m, 5, 7) == m);
    const LabelMap up = resize_nearest(m, 10, 14);
    CHECK(up.at(1, 1) == m.at(0, 0));
    CHECK(up.at(9, 13) == m.at(4, 6));

    const Image flat(4, 4, {9, 99, 199});
    CHECK(resize_bilinear(flat, 9, 3) == Image(9, 3, {9, 99, 199}));
}
