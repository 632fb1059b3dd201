// Digits of 3/7, one cylinder, and the dimension estimate for s_n = 4^n,
// t_n = 2^n (the limit of F_n is 1/2).
#include <iostream>

#include <engel/engel.hpp>

int main()
{
    using namespace engel;

    const auto expansion = engel_digits(Rational(3, 7), 10);
    std::cout << "3/7 = " << to_string(expansion.digits) << "\n";
    std::cout << "cylinder of [2,3]: " << to_string(cylinder_interval(DigitWord{2, 3})) << "\n";

    const auto family = SequenceFamily::geometric({1, 4}, {1, 2});
    const auto report = estimate_dim(family, 10000);
    std::cout << "F_10000 = " << report.formula.back() << ", estimated_dim = " << report.estimated_dim << "\n";
}
