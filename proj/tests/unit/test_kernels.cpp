#include "doctest.h"

#include "wicklab/fock_operators.hpp"
#include "wicklab/kernels.hpp"
#include "wicklab/random.hpp"

using namespace wicklab;

namespace {

bool bit_identical(const SparseMat& a, const SparseMat& b)
{
    SparseMat x = a, y = b;
    x.makeCompressed();
    y.makeCompressed();
    if (x.rows() != y.rows() || x.cols() != y.cols() || x.nonZeros() != y.nonZeros())
        return false;
    for (Index c = 0; c <= x.cols(); ++c)
        if (x.outerIndexPtr()[c] != y.outerIndexPtr()[c])
            return false;
    for (Index k = 0; k < x.nonZeros(); ++k)
        if (x.innerIndexPtr()[k] != y.innerIndexPtr()[k] || x.valuePtr()[k] != y.valuePtr()[k])
            return false;
    return true;
}

} // namespace

TEST_CASE("duplicate rows merge and exact zeros vanish")
{
    auto col = [](Index c, std::vector<Entry>& out) {
        out.push_back({2, cplx(1.0)});
        out.push_back({0, cplx(double(c))});
        out.push_back({2, cplx(0.5)});
        out.push_back({1, cplx(1.0)});
        out.push_back({1, cplx(-1.0)});
    };
    const SparseMat s = kernels::assemble_columns_serial(3, 4, col);
    const SparseMat p = kernels::assemble_columns_parallel(3, 4, col);
    CHECK(bit_identical(s, p));
    CHECK(s.nonZeros() == 7);
    CHECK(std::abs(s.coeff(2, 1) - 1.5) == 0.0);
    CHECK(s.coeff(1, 3) == cplx(0.0));
}

TEST_CASE("serial and parallel operator assembly are bit-identical")
{
    Rng rng(3);
    for (auto st : {Statistics::Bose, Statistics::Fermi}) {
        auto b = enumerate_basis(st, 6, 3);
        const CVector f = random_vector(rng, 6);
        const CMatrix u = random_unitary(rng, 6);
        const CMatrix h = random_hermitian(rng, 6);
        for (auto kind : {FieldKind::Creation, FieldKind::Annihilation})
            CHECK(bit_identical(field_operator(b, kind, f, Exec::Serial).matrix(),
                                field_operator(b, kind, f, Exec::Parallel).matrix()));
        CHECK(bit_identical(second_quantize(b, u, Exec::Serial).matrix(),
                            second_quantize(b, u, Exec::Parallel).matrix()));
        CHECK(bit_identical(diff_second_quantize(b, h, Exec::Serial).matrix(),
                            diff_second_quantize(b, h, Exec::Parallel).matrix()));
    }
}

TEST_CASE("default exec switch")
{
    const Exec before = default_exec();
    set_default_exec(Exec::Serial);
    CHECK(default_exec() == Exec::Serial);
    set_default_exec(Exec::Parallel);
    CHECK(default_exec() == Exec::Parallel);
    set_default_exec(before);
}
