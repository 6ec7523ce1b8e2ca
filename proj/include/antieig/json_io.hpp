#pragma once

#include <string>

#include "antieig/antieigen.hpp"
#include "antieig/dissipativity.hpp"
#include "antieig/ou_kernel.hpp"
#include "antieig/types.hpp"

namespace antieig {

// Shared matrix format: {"rows": N, "cols": M, "entries": [[e, ...], ...]},
// row-major, each entry either a plain number or an [re, im] pair.
ComplexMatrix parse_complex_matrix(const std::string& text);
RealMatrix parse_real_matrix(const std::string& text);
ComplexMatrix load_complex_matrix(const std::string& path);
RealMatrix load_real_matrix(const std::string& path);

// {"A": matrix, "B": matrix, "S": matrix, "d": int}
OUOperatorSpec load_ou_spec(const std::string& path);
OUOperatorSpec parse_ou_spec(const std::string& text);

// Serialization is deterministic: fixed key order, numbers with 17
// significant digits.
std::string fmt_double(double x);
std::string dump_matrix(const ComplexMatrix& m);
std::string dump_matrix(const RealMatrix& m);

std::string dump_antieigen_result(const AntieigenResult& r);
std::string dump_dissipativity_report(const DissipativityReport& r);
std::string dump_equivalence_result(const EquivalenceResult& r);
std::string dump_p_range(const PRange& r);
std::string dump_two_vector_result(const TwoVectorResult& r);
std::string dump_lagrange_trace(const LagrangeTrace& t);
std::string dump_mass_check(const MassCheckResult& r);
std::string dump_resolvent_probe(const ResolventProbeResult& r);

}  // namespace antieig
