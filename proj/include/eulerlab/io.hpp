#pragma once

#include <string>
#include <vector>

#include "eulerlab/lattice.hpp"
#include "eulerlab/solutions.hpp"

namespace eulerlab {

// One sampled lattice point. All values finite; rows are ordered t-major,
// then y, then x.
struct FieldRecord {
    double x = 0.0, y = 0.0, t = 0.0;
    double u1 = 0.0, u2 = 0.0, p = 0.0;
    double div = 0.0, vort = 0.0, z = 0.0;
};

struct SampleResult {
    std::vector<FieldRecord> records;
    std::size_t skipped = 0;
};

// Evaluates the case solution over the lattice. Without allow_skip any
// inadmissible point raises DomainError naming it; with allow_skip such
// points are omitted and counted.
SampleResult sample_records(const SolutionParams& params, const SampleLattice& lattice,
                            const EvalDomain& domain = {}, double amplitude = 1.0,
                            bool allow_skip = false);

// CSV with header x,y,t,u1,u2,p,div,vort,z and 17-significant-digit values
// (doubles round-trip bit-exactly through the text form).
void write_csv(const std::vector<FieldRecord>& records, const std::string& path);
std::vector<FieldRecord> read_csv(const std::string& path);

// Legacy ASCII VTK STRUCTURED_POINTS snapshot of a single time level:
// VECTORS velocity (u1, u2, 0), SCALARS pressure and vorticity. The records
// must cover the full regular lattice at one t.
void write_vtk(const std::vector<FieldRecord>& records, const SampleLattice& lattice,
               const std::string& path, const std::string& title = "eulerlab field sample");

// 17-significant-digit shortest round-trip text for a double.
std::string format_double(double v);

} // namespace eulerlab
