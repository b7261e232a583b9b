#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "property_suite.hpp"

// a lighter case count here; the acceptance suite runs the full budget
static constexpr int kCases = 60;

#define RUN_PROP(fn, seed)                          \
  do {                                              \
    props::Result r = props::fn(kCases, seed);      \
    INFO(r.name, ": ", r.detail);                   \
    CHECK(r.cases >= kCases);                       \
    CHECK(r.failures == 0);                         \
  } while (0)

TEST_CASE("realize after minimal resolution") { RUN_PROP(prop_realize_roundtrip, 11); }
TEST_CASE("strip after pad") { RUN_PROP(prop_strip_pad, 22); }
TEST_CASE("class invariant under padding") { RUN_PROP(prop_class_padding, 33); }
TEST_CASE("common padding characterization") { RUN_PROP(prop_common_padding, 44); }
TEST_CASE("left Kan against right-adjoint pullback") { RUN_PROP(prop_kan_vs_pullback, 55); }
TEST_CASE("kernel functor commutation") { RUN_PROP(prop_kernel_commute, 66); }
TEST_CASE("composite coupling subadditivity") { RUN_PROP(prop_compose_subadditive, 77); }
TEST_CASE("coupling bounds the matching distances") { RUN_PROP(prop_coupling_bounds, 88); }
TEST_CASE("yoneda dimensions") { RUN_PROP(prop_yoneda, 99); }
TEST_CASE("chain barcodes and classical bottleneck consistency") {
  RUN_PROP(prop_chain_barcode, 111);
}
