#ifndef HYP2_HYP2_HPP
#define HYP2_HYP2_HPP

// 2-torsion invariants of hyperelliptic curves y^2 - y = f(x) over GF(2^n).

#include "hyp2/classify.hpp"
#include "hyp2/curve.hpp"
#include "hyp2/drham.hpp"
#include "hyp2/field.hpp"
#include "hyp2/gc.hpp"
#include "hyp2/io.hpp"
#include "hyp2/matrix.hpp"
#include "hyp2/poly.hpp"
#include "hyp2/semilin.hpp"

#endif  // HYP2_HYP2_HPP
