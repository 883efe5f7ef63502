#include "lislab/series.hpp"

#include <gmpxx.h>

#include "lislab/modular.hpp"

namespace lislab::series {

template std::vector<double> v_coefficients<double>(int, int);
template std::vector<long double> v_coefficients<long double>(int, int);
template std::vector<mpq_class> v_coefficients<mpq_class>(int, int);
template std::vector<ModP> v_coefficients<ModP>(int, int);
template std::vector<double> p_coefficients<double>(int, int);
template std::vector<long double> p_coefficients<long double>(int, int);
template std::vector<mpq_class> p_coefficients<mpq_class>(int, int);
template std::vector<ModP> p_coefficients<ModP>(int, int);

}  // namespace lislab::series
