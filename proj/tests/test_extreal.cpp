#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "gtp/extreal.hpp"

using namespace gtp;

TEST_CASE("total order") {
    ExtReal ninf = ExtReal::neg_inf(), pinf = ExtReal::pos_inf();
    CHECK(ninf < ExtReal(make_rat(-1000)));
    CHECK(ExtReal(make_rat(1000)) < pinf);
    CHECK(ninf < pinf);
    CHECK(ExtReal(make_rat(1, 3)) < ExtReal(make_rat(1, 2)));
    CHECK(ninf <= ninf);
    CHECK(pinf <= pinf);
    CHECK(ExtReal(Rat(2)) == ExtReal(make_rat(4, 2)));
}

TEST_CASE("pessimistic subtraction") {
    ExtReal ninf = ExtReal::neg_inf(), pinf = ExtReal::pos_inf();
    CHECK(sub_pessimistic(pinf, pinf) == pinf);
    CHECK(sub_pessimistic(ninf, ninf) == pinf);
    CHECK(sub_pessimistic(pinf, ninf) == pinf);
    CHECK(sub_pessimistic(ninf, pinf) == ninf);
    CHECK(sub_pessimistic(ExtReal(Rat(3)), ExtReal(Rat(1))) == ExtReal(Rat(2)));
    CHECK(sub_pessimistic(ExtReal(Rat(3)), ninf) == pinf);
    CHECK(sub_pessimistic(ninf, ExtReal(Rat(3))) == ninf);
}

TEST_CASE("indeterminate sums raise") {
    ExtReal ninf = ExtReal::neg_inf(), pinf = ExtReal::pos_inf();
    CHECK((pinf + pinf) == pinf);
    CHECK((ninf + ninf) == ninf);
    CHECK((pinf + ExtReal(Rat(5))) == pinf);
    CHECK_THROWS_WITH_AS(pinf + ninf, doctest::Contains("IndeterminateSum"), Error);
    CHECK_THROWS_WITH_AS(ninf + pinf, doctest::Contains("IndeterminateSum"), Error);
}

TEST_CASE("scalar multiples") {
    ExtReal pinf = ExtReal::pos_inf();
    CHECK(pinf * make_rat(2) == pinf);
    CHECK(pinf * make_rat(-2) == ExtReal::neg_inf());
    CHECK(pinf * Rat(0) == ExtReal(Rat(0)));
    CHECK(ExtReal(make_rat(1, 2)) * Rat(3) == ExtReal(make_rat(3, 2)));
    CHECK(-pinf == ExtReal::neg_inf());
}

TEST_CASE("finite() guards") {
    CHECK(ExtReal(make_rat(7, 3)).finite() == make_rat(7, 3));
    CHECK_THROWS_WITH_AS(ExtReal::pos_inf().finite(), doctest::Contains("NotFinite"), Error);
}

TEST_CASE("sup and inf of lists") {
    std::vector<ExtReal> xs{ExtReal(Rat(1)), ExtReal::neg_inf(), ExtReal(Rat(3))};
    CHECK(sup_finite_list(xs) == ExtReal(Rat(3)));
    CHECK(inf_finite_list(xs) == ExtReal::neg_inf());
    CHECK_THROWS_WITH_AS(sup_finite_list({}), doctest::Contains("EmptyDomain"), Error);
    CHECK_THROWS_WITH_AS(inf_finite_list({}), doctest::Contains("EmptyDomain"), Error);
}

TEST_CASE("string round trip") {
    for (const char* s : {"inf", "-inf", "0", "7/3", "-12/5"}) {
        CHECK(ExtReal::parse(s).to_string() == s);
    }
    CHECK(ExtReal::parse("4/2") == ExtReal(Rat(2)));
    CHECK_THROWS_AS(ExtReal::parse("one"), Error);
}
