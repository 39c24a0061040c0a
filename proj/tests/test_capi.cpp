#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cstring>
#include <string>

#include "doctest.h"
#include "json.hpp"
#include "latdist/latdist.h"

using nlohmann::json;

namespace {

struct OwnedString {
    char* ptr = nullptr;
    ~OwnedString() { latdist_string_free(ptr); }
    json parse() const { return json::parse(std::string(ptr)); }
};

struct OwnedMatrix {
    latdist_matrix* ptr = nullptr;
    ~OwnedMatrix() { latdist_matrix_free(ptr); }
};

OwnedMatrix must_parse(const std::string& text) {
    OwnedMatrix m;
    REQUIRE(latdist_matrix_parse(text.c_str(), &m.ptr) == LATDIST_OK);
    return m;
}

std::string entry(const latdist_matrix* m, int i, int j) {
    OwnedString s;
    REQUIRE(latdist_matrix_entry(m, i, j, &s.ptr) == LATDIST_OK);
    return std::string(s.ptr);
}

}  // namespace

TEST_CASE("version string") {
    CHECK(std::string(latdist_version()) == "0.1.0");
}

TEST_CASE("matrix parsing, getters, and failure codes") {
    OwnedMatrix m = must_parse(R"({"n": 2, "basis": [["1", "-3/4"], ["0", "2"]], "label": "x"})");
    CHECK(latdist_matrix_rows(m.ptr) == 2);
    CHECK(latdist_matrix_cols(m.ptr) == 2);
    CHECK(entry(m.ptr, 0, 1) == "-3/4");
    CHECK(std::string(latdist_matrix_label(m.ptr)) == "x");

    latdist_matrix* bad = nullptr;
    CHECK(latdist_matrix_parse("{oops", &bad) == LATDIST_ERR_PARSE);
    CHECK(bad == nullptr);
    CHECK(std::strlen(latdist_last_error()) > 0);

    CHECK(latdist_matrix_parse("1 2\n2 4\n", &bad) == LATDIST_ERR_RANK_DEFICIENT);
    CHECK(latdist_matrix_parse(nullptr, &bad) == LATDIST_ERR_BAD_ARGUMENT);
    CHECK(latdist_matrix_entry(m.ptr, 5, 0, nullptr) == LATDIST_ERR_BAD_ARGUMENT);
}

TEST_CASE("matrix construction from entries and JSON round-trip") {
    const char* entries[] = {"1", "1/2", "0", "1"};
    OwnedMatrix m;
    REQUIRE(latdist_matrix_from_entries(2, 2, entries, &m.ptr) == LATDIST_OK);
    CHECK(entry(m.ptr, 0, 1) == "1/2");

    OwnedString text;
    REQUIRE(latdist_matrix_to_json(m.ptr, "round", &text.ptr) == LATDIST_OK);
    OwnedMatrix back = must_parse(std::string(text.ptr));
    CHECK(entry(back.ptr, 0, 1) == "1/2");
    CHECK(std::string(latdist_matrix_label(back.ptr)) == "round");

    const char* junk[] = {"1", "x", "0", "1"};
    latdist_matrix* out = nullptr;
    CHECK(latdist_matrix_from_entries(2, 2, junk, &out) == LATDIST_ERR_PARSE);
    CHECK(latdist_matrix_from_entries(0, 2, entries, &out) == LATDIST_ERR_BAD_ARGUMENT);
}

TEST_CASE("reduction through the boundary") {
    OwnedMatrix m = must_parse("1 7\n0 1\n");
    OwnedMatrix out;
    OwnedString report;
    REQUIRE(latdist_reduce(m.ptr, "lll", nullptr, nullptr, 2, 0, &out.ptr, &report.ptr) ==
            LATDIST_OK);
    json doc = report.parse();
    CHECK(doc["op"] == "reduce");
    CHECK(doc["algo"] == "lll");
    CHECK(doc["certificate"]["ok"] == true);
    CHECK(doc["params"]["delta"] == "3/4");
    CHECK(doc["measurements"]["before"].contains("s_sq"));
    CHECK(doc["measurements"]["after"]["eta_sq"].is_string());

    OwnedMatrix out2;
    OwnedString rep2;
    CHECK(latdist_reduce(m.ptr, "nonsense", nullptr, nullptr, 2, 0, &out2.ptr, &rep2.ptr) ==
          LATDIST_ERR_BAD_ARGUMENT);
    CHECK(latdist_reduce(m.ptr, "slide", nullptr, nullptr, 3, 0, &out2.ptr, &rep2.ptr) ==
          LATDIST_ERR_NON_DIVIDING);

    OwnedMatrix pip_out;
    OwnedString pip_rep;
    REQUIRE(latdist_reduce(m.ptr, "pipeline", nullptr, nullptr, 2, 0, &pip_out.ptr,
                           &pip_rep.ptr) == LATDIST_OK);
    json pip = pip_rep.parse();
    CHECK(pip["stages"] == json::array({"slide", "seysen"}));
    CHECK(pip["certificate"]["ok"] == true);

    const char* odd_entries[] = {"3", "1", "0", "0", "2", "1", "0", "0", "5"};
    OwnedMatrix odd;
    REQUIRE(latdist_matrix_from_entries(3, 3, odd_entries, &odd.ptr) == LATDIST_OK);
    OwnedMatrix pad_out;
    OwnedString pad_rep;
    REQUIRE(latdist_reduce(odd.ptr, "pipeline", nullptr, nullptr, 2, 0, &pad_out.ptr,
                           &pad_rep.ptr) == LATDIST_OK);
    json pad = pad_rep.parse();
    CHECK(pad["stages"] == json::array({"padded-slide", "seysen"}));
    CHECK(pad["certificate"]["ok"] == true);
}

TEST_CASE("distortion report fields") {
    OwnedMatrix a = must_parse("1 0\n0 1\n");
    OwnedMatrix b = must_parse("1 0\n0 4\n");
    OwnedString report;
    REQUIRE(latdist_distortion(a.ptr, b.ptr, 2, 1, 0, &report.ptr) == LATDIST_OK);
    json doc = report.parse();
    CHECK(doc["op"] == "distortion");
    CHECK(doc["kappa"] == "4");
    CHECK(doc["lower_bound_sq"] == "16");
    CHECK(doc["lower_bound"] == "4");
    CHECK(doc["m12_sq"] == "16");
    CHECK(doc["m21_sq"] == "1");
    CHECK(doc["mapping_verified"] == true);
    CHECK(doc["sandwich_ok"] == true);
    CHECK(doc["lower_bound_available"] == true);

    OwnedString no_lower;
    REQUIRE(latdist_distortion(a.ptr, b.ptr, 2, 0, 0, &no_lower.ptr) == LATDIST_OK);
    json skinny = no_lower.parse();
    CHECK(skinny["lower_bound_sq"].is_null());
    CHECK(skinny["sandwich_ok"].is_null());
}

TEST_CASE("gap decisions and their reasons") {
    OwnedMatrix a = must_parse("1 0\n0 1\n");
    OwnedMatrix b = must_parse("1 0\n0 4\n");

    OwnedString yes;
    REQUIRE(latdist_decide(a.ptr, b.ptr, "5", 1.0, 2, 0, &yes.ptr) == LATDIST_OK);
    CHECK(yes.parse()["verdict"] == "YES");
    CHECK(yes.parse()["reason"].is_null());

    OwnedString no;
    REQUIRE(latdist_decide(a.ptr, b.ptr, "2", 1.0, 2, 0, &no.ptr) == LATDIST_OK);
    CHECK(no.parse()["verdict"] == "NO");

    OwnedMatrix wide = must_parse("1 0\n0 1000000\n");
    OwnedString unknown;
    REQUIRE(latdist_decide(a.ptr, wide.ptr, "2", 1.0, 2, 100000, &unknown.ptr) == LATDIST_OK);
    json udoc = unknown.parse();
    CHECK(udoc["verdict"] == "UNKNOWN");
    CHECK(udoc["reason"] == "lower bound unavailable");
    CHECK(udoc["lower_bound_sq"].is_null());

    OwnedString err;
    CHECK(latdist_decide(a.ptr, b.ptr, "1/2", 1.0, 2, 0, &err.ptr) ==
          LATDIST_ERR_BAD_ARGUMENT);
    CHECK(latdist_decide(a.ptr, b.ptr, nullptr, 1.0, 2, 0, &err.ptr) ==
          LATDIST_ERR_BAD_ARGUMENT);
}

TEST_CASE("gadget construction reports") {
    OwnedMatrix z2 = must_parse("1 0\n0 1\n");
    const char* target[] = {"1/2", "0"};

    OwnedString cvp2ldp;
    REQUIRE(latdist_gadget_cvp2ldp(z2.ptr, target, 2, "1", 0, 1.0, 0, &cvp2ldp.ptr) ==
            LATDIST_OK);
    json gdoc = cvp2ldp.parse();
    CHECK(gdoc["kind"] == "cvp2ldp");
    CHECK(gdoc["trace"]["r"] == "2");
    CHECK(gdoc["trace"]["c"] == "3");
    CHECK(gdoc["l1"]["label"] == "cvp2ldp-l1");
    CHECK(gdoc["l2"]["label"] == "cvp2ldp-l2");
    CHECK(gdoc["l1"]["n"] == 3);

    OwnedString low_gamma;
    CHECK(latdist_gadget_cvp2ldp(z2.ptr, target, 2, "1", 0, 0.5, 0, &low_gamma.ptr) ==
          LATDIST_ERR_INVALID_GAMMA);

    OwnedString svp2cvp;
    REQUIRE(latdist_gadget_svp2cvp(z2.ptr, "1", 1.0, &svp2cvp.ptr) == LATDIST_OK);
    json sdoc = svp2cvp.parse();
    CHECK(sdoc["kind"] == "svp2cvp");
    CHECK(sdoc["trace"]["p"] == "23");
    CHECK(sdoc["trace"]["count"] == 44);
    CHECK(sdoc["instances"].size() == 44);
    CHECK(sdoc["instances"][0]["i"] == 0);
    CHECK(sdoc["instances"][0]["j"] == 1);
    CHECK(sdoc["instances"][0]["label"] == "svp2cvp-i0-j1");

    OwnedString bad_gamma;
    CHECK(latdist_gadget_svp2cvp(z2.ptr, "1", 0.9, &bad_gamma.ptr) ==
          LATDIST_ERR_INVALID_GAMMA);
}

TEST_CASE("generator handles") {
    OwnedMatrix lt;
    REQUIRE(latdist_luk_tracy(2, &lt.ptr) == LATDIST_OK);
    CHECK(entry(lt.ptr, 0, 1) == "-1/2");
    CHECK(std::string(latdist_matrix_label(lt.ptr)) == "luk-tracy-2");
    latdist_matrix* none = nullptr;
    CHECK(latdist_luk_tracy(0, &none) == LATDIST_ERR_BAD_ARGUMENT);

    OwnedMatrix r1, r2;
    REQUIRE(latdist_random_lattice(3, 5, 7, &r1.ptr) == LATDIST_OK);
    REQUIRE(latdist_random_lattice(3, 5, 7, &r2.ptr) == LATDIST_OK);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) CHECK(entry(r1.ptr, i, j) == entry(r2.ptr, i, j));
}

TEST_CASE("oracles through the boundary") {
    OwnedMatrix m = must_parse("2 1\n0 2\n");

    OwnedString minima;
    REQUIRE(latdist_oracle(m.ptr, "minima", nullptr, 0, 0, &minima.ptr) == LATDIST_OK);
    json mdoc = minima.parse();
    CHECK(mdoc["lambda_sq"] == json::array({"4", "5"}));

    OwnedString svp;
    REQUIRE(latdist_oracle(m.ptr, "svp", nullptr, 0, 0, &svp.ptr) == LATDIST_OK);
    CHECK(svp.parse()["norm_sq"] == "4");

    const char* target[] = {"1", "1"};
    OwnedString cvp;
    REQUIRE(latdist_oracle(m.ptr, "cvp", target, 2, 0, &cvp.ptr) == LATDIST_OK);
    CHECK(cvp.parse().contains("dist_sq"));

    OwnedString transference;
    REQUIRE(latdist_oracle(m.ptr, "transference", nullptr, 0, 0, &transference.ptr) ==
            LATDIST_OK);
    CHECK(transference.parse()["ok"] == true);

    OwnedString bad;
    CHECK(latdist_oracle(m.ptr, "wat", nullptr, 0, 0, &bad.ptr) == LATDIST_ERR_BAD_ARGUMENT);

    OwnedMatrix wide = must_parse("1 0\n0 1000000\n");
    OwnedString starved;
    CHECK(latdist_oracle(wide.ptr, "minima", nullptr, 0, 10, &starved.ptr) ==
          LATDIST_ERR_BUDGET_EXCEEDED);
}

TEST_CASE("bench suites and their argument checks") {
    OwnedString growth;
    REQUIRE(latdist_bench("luktracy-growth", 2, 4, 1, 0, 0, 0, &growth.ptr) == LATDIST_OK);
    json gdoc = growth.parse();
    CHECK(gdoc["rows"].size() == 3);
    CHECK(gdoc["rows"][0]["n"] == 2);
    CHECK(gdoc["rows"][0]["growth_ratio"].is_null());
    CHECK(gdoc["rows"][1]["growth_ratio"].is_string());

    OwnedString err;
    CHECK(latdist_bench("wat", 2, 4, 1, 0, 0, 0, &err.ptr) == LATDIST_ERR_BAD_ARGUMENT);
    CHECK(latdist_bench("seysen-zeta", 2, 4, 1, 0, 0, 0, &err.ptr) ==
          LATDIST_ERR_BAD_ARGUMENT);
    CHECK(latdist_bench("luktracy-growth", 1, 4, 1, 0, 0, 0, &err.ptr) ==
          LATDIST_ERR_BAD_ARGUMENT);
    CHECK(latdist_bench("luktracy-growth", 4, 2, 1, 0, 0, 0, &err.ptr) ==
          LATDIST_ERR_BAD_ARGUMENT);

    OwnedString zeta;
    REQUIRE(latdist_bench("seysen-zeta", 2, 3, 2, 99, 1, 0, &zeta.ptr) == LATDIST_OK);
    json zdoc = zeta.parse();
    CHECK(zdoc["rows"].size() == 2);
    CHECK(zdoc["rows"][0].contains("worst_s_prime"));
}

TEST_CASE("null-safety of frees and getters") {
    latdist_matrix_free(nullptr);
    latdist_string_free(nullptr);
    CHECK(latdist_matrix_rows(nullptr) == 0);
    CHECK(latdist_matrix_cols(nullptr) == 0);
    CHECK(std::string(latdist_matrix_label(nullptr)).empty());
}
