#include "doctest.h"

#include <algorithm>
#include <numeric>
#include <vector>

#include "wicklab/error.hpp"
#include "wicklab/permanent.hpp"
#include "wicklab/random.hpp"

using namespace wicklab;

namespace {

cplx brute_permanent(const CMatrix& a)
{
    std::vector<Index> p(static_cast<std::size_t>(a.rows()));
    std::iota(p.begin(), p.end(), 0);
    cplx sum = 0;
    do {
        cplx term = 1;
        for (Index i = 0; i < a.rows(); ++i)
            term *= a(i, p[static_cast<std::size_t>(i)]);
        sum += term;
    } while (std::next_permutation(p.begin(), p.end()));
    return sum;
}

} // namespace

TEST_CASE("small closed forms")
{
    CHECK(permanent(CMatrix(0, 0)) == cplx(1.0));
    CMatrix a(2, 2);
    a << 1, 2, 3, 4;
    CHECK(std::abs(permanent(a) - 10.0) < 1e-14);
    CHECK(std::abs(permanent(CMatrix::Ones(4, 4)) - 24.0) < 1e-12);
}

TEST_CASE("Ryser agrees with brute force")
{
    Rng rng(11);
    for (Index n = 1; n <= 7; ++n) {
        const CMatrix a = random_matrix(rng, n, n);
        const cplx ref = brute_permanent(a);
        CHECK(std::abs(permanent(a) - ref) <= 1e-12 * std::max(1.0, std::abs(ref)));
    }
}

TEST_CASE("cap")
{
    try {
        permanent(CMatrix::Ones(13, 13));
        FAIL("expected SizeOverflow");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::SizeOverflow);
    }
}
