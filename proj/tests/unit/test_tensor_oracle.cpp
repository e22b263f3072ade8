#include "doctest.h"

#include "wicklab/error.hpp"
#include "wicklab/tensor_oracle.hpp"

using namespace wicklab;

TEST_CASE("library operators match the tensor-space construction")
{
    for (std::size_t d = 1; d <= 3; ++d)
        for (std::size_t n = 0; n <= 3; ++n) {
            CAPTURE(d);
            CAPTURE(n);
            const OracleDefects o = tensor_oracle_compare(d, n, 7 + d * 10 + n);
            CHECK(o.bose_creation <= 1e-12);
            CHECK(o.bose_annihilation <= 1e-12);
            CHECK(o.fermi_creation <= 1e-12);
            CHECK(o.fermi_annihilation <= 1e-12);
            CHECK(o.bose_gamma <= 1e-12);
            CHECK(o.fermi_gamma <= 1e-12);
            CHECK(o.bose_dgamma <= 1e-12);
            CHECK(o.fermi_dgamma <= 1e-12);
            CHECK(o.bose_isometry <= 1e-12);
            CHECK(o.fermi_isometry <= 1e-12);
            CHECK(o.oracle_car <= 1e-12);
            CHECK(o.swap_gamma <= 1e-12);
        }
}

TEST_CASE("symmetrizers are projectors")
{
    const TensorSpace t(3, 3);
    for (auto st : {Statistics::Bose, Statistics::Fermi}) {
        const CMatrix p = t.symmetrizer(st);
        CHECK((p * p - p).cwiseAbs().maxCoeff() <= 1e-13);
        CHECK((p.adjoint() - p).cwiseAbs().maxCoeff() <= 1e-13);
    }
}

TEST_CASE("size limits")
{
    CHECK_THROWS_AS(tensor_oracle_compare(4, 2), Error);
    CHECK_THROWS_AS(tensor_oracle_compare(2, 4), Error);
}
