#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <unistd.h>

#include "bianchi/io.hpp"

using namespace bianchi;
namespace fs = std::filesystem;

static const bool prec_init = [] {
    set_precision_bits(160);
    return true;
}();

namespace {

struct TempCacheDir {
    fs::path dir;
    TempCacheDir() {
        dir = fs::temp_directory_path() / ("bianchi-io-test-" + std::to_string(::getpid()));
        fs::remove_all(dir);
        setenv("BIANCHI_CACHE_DIR", dir.c_str(), 1);
    }
    ~TempCacheDir() {
        fs::remove_all(dir);
        unsetenv("BIANCHI_CACHE_DIR");
    }
};

}  // namespace

TEST_CASE("quadint literals round trip") {
    OrderSpec ord(2);
    auto rt = [&](const std::string& s, std::int64_t x, std::int64_t y) {
        QuadInt a = parse_quadint(s, ord);
        CHECK(a.x() == x);
        CHECK(a.y() == y);
    };
    rt("3", 3, 0);
    rt("-5", -5, 0);
    rt("w", 0, 1);
    rt("-w", 0, -1);
    rt("2*w", 0, 2);
    rt("2w", 0, 2);
    rt("1+w", 1, 1);
    rt("-1-2*w", -1, -2);
    rt("7-3w", 7, -3);
    CHECK_THROWS_AS(parse_quadint("", ord), config_error);
    CHECK_THROWS_AS(parse_quadint("1+", ord), config_error);
    CHECK_THROWS_AS(parse_quadint("2*q", ord), config_error);

    // str() output parses back to the same element
    for (auto a : {QuadInt(0, 1, ord), QuadInt(-3, 2, ord), QuadInt(4, 0, ord)}) {
        QuadInt b = parse_quadint(a.str(), ord);
        CHECK(a == b);
    }
}

TEST_CASE("matrix parsing") {
    OrderSpec ord(2);
    Mat2 m = parse_matrix("1,1,w,1+w", ord);
    CHECK(m.a() == QuadInt(1, 0, ord));
    CHECK(m.d() == QuadInt(1, 1, ord));
    CHECK(m.is_sl2());
    CHECK_THROWS_AS(parse_matrix("1,2,3", ord), config_error);
}

TEST_CASE("complex json uses decimal strings") {
    Complex z(Real("1.25"), Real("-3.5"));
    Json j = complex_json(z);
    CHECK(Real(j["re"].get<std::string>()) == Real("1.25"));
    CHECK(Real(j["im"].get<std::string>()) == Real("-3.5"));
}

TEST_CASE("constants cache: cold write, warm read, identical values") {
    TempCacheDir tmp;
    OrderSpec ord(2);
    Lattice lat = Lattice::standard(ord);
    SeriesParams params = SeriesParams::defaults();

    CacheOutcome first, second;
    LatticeConstants cold = cached_constants(lat, params, &first);
    CHECK(!first.hit);
    CHECK(fs::exists(first.path));

    LatticeConstants warm = cached_constants(lat, params, &second);
    CHECK(second.hit);
    CHECK(!second.corrupt);
    CHECK(abs(cold.e2zero() - warm.e2zero()) < Real("1e-40"));
    CHECK(cold.character_scale() == warm.character_scale());

    // the restored constants drive the same downstream values
    Complex x(Real("0.31"), Real("0.17"));
    CHECK(abs(e_k(2, x, cold, params) - e_k(2, x, warm, params)) < Real("1e-38"));
}

TEST_CASE("cache keys on precision") {
    TempCacheDir tmp;
    OrderSpec ord(2);
    Lattice lat = Lattice::standard(ord);
    SeriesParams params = SeriesParams::defaults();
    CacheOutcome a, b;
    cached_constants(lat, params, &a);
    {
        ScopedPrecision sp(240);
        SeriesParams high = SeriesParams::defaults();
        cached_constants(lat, high, &b);
    }
    CHECK(!b.hit);  // different precision, different entry
    CHECK(a.path != b.path);
    CHECK(clear_cache() == 2);
}

TEST_CASE("tampered cache entries are detected and rebuilt") {
    TempCacheDir tmp;
    OrderSpec ord(2);
    Lattice lat = Lattice::standard(ord);
    SeriesParams params = SeriesParams::defaults();
    CacheOutcome first;
    LatticeConstants cold = cached_constants(lat, params, &first);

    // flip a digit in the stored constant
    std::ifstream in(first.path);
    Json j = Json::parse(in);
    in.close();
    std::string re_str = j["e2zero"]["re"].get<std::string>();
    auto pos = re_str.find_last_of("0123456789");
    re_str[pos] = re_str[pos] == '7' ? '8' : '7';
    j["e2zero"]["re"] = re_str;
    std::ofstream out(first.path);
    out << j.dump(2) << "\n";
    out.close();

    CacheOutcome again;
    LatticeConstants rebuilt = cached_constants(lat, params, &again);
    CHECK(!again.hit);
    CHECK(again.corrupt);
    CHECK(abs(rebuilt.e2zero() - cold.e2zero()) < Real("1e-40"));

    // the rewritten entry is valid once more
    CacheOutcome final_read;
    cached_constants(lat, params, &final_read);
    CHECK(final_read.hit);
}
