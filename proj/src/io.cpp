#include "eulerlab/io.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace eulerlab {

namespace {

constexpr const char* kCsvHeader = "x,y,t,u1,u2,p,div,vort,z";

void require_finite(const FieldRecord& r) {
    const double vals[] = {r.x, r.y, r.t, r.u1, r.u2, r.p, r.div, r.vort, r.z};
    for (double v : vals)
        if (!std::isfinite(v))
            throw std::invalid_argument("field record contains a non-finite value");
}

double parse_double(const std::string& token, const std::string& path) {
    char* end = nullptr;
    const double v = std::strtod(token.c_str(), &end);
    if (end == token.c_str() || *end != '\0')
        throw IoError("unparsable number '" + token + "' in " + path);
    return v;
}

} // namespace

std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

SampleResult sample_records(const SolutionParams& params, const SampleLattice& lattice,
                            const EvalDomain& domain, double amplitude, bool allow_skip) {
    lattice.validate();
    SampleResult out;
    out.records.reserve(lattice.points());
    lattice.for_each([&](double x, double y, double t) {
        if (!domain.admissible(params, x, y, t)) {
            if (!allow_skip)
                throw DomainError("lattice point (" + std::to_string(x) + ", " +
                                  std::to_string(y) + ", " + std::to_string(t) +
                                  ") is outside the solution domain");
            ++out.skipped;
            return;
        }
        const FlowState s = evaluate_case(params, x, y, t, amplitude);
        out.records.push_back({x, y, t, s.u1, s.u2, s.p, s.div, s.vort, s.z});
    });
    return out;
}

void write_csv(const std::vector<FieldRecord>& records, const std::string& path) {
    std::ofstream os(path);
    if (!os)
        throw IoError("cannot open " + path + " for writing");
    os << kCsvHeader << '\n';
    for (const FieldRecord& r : records) {
        require_finite(r);
        os << format_double(r.x) << ',' << format_double(r.y) << ',' << format_double(r.t)
           << ',' << format_double(r.u1) << ',' << format_double(r.u2) << ','
           << format_double(r.p) << ',' << format_double(r.div) << ','
           << format_double(r.vort) << ',' << format_double(r.z) << '\n';
    }
    if (!os)
        throw IoError("write failed for " + path);
}

std::vector<FieldRecord> read_csv(const std::string& path) {
    std::ifstream is(path);
    if (!is)
        throw IoError("cannot open " + path + " for reading");
    std::string line;
    if (!std::getline(is, line) || line != kCsvHeader)
        throw IoError("missing or malformed CSV header in " + path);

    std::vector<FieldRecord> records;
    while (std::getline(is, line)) {
        if (line.empty())
            continue;
        std::stringstream ss(line);
        std::string token;
        double vals[9];
        for (int k = 0; k < 9; ++k) {
            if (!std::getline(ss, token, ','))
                throw IoError("short CSV row in " + path);
            vals[k] = parse_double(token, path);
        }
        if (std::getline(ss, token, ','))
            throw IoError("extra CSV column in " + path);
        records.push_back({vals[0], vals[1], vals[2], vals[3], vals[4], vals[5], vals[6],
                           vals[7], vals[8]});
    }
    return records;
}

void write_vtk(const std::vector<FieldRecord>& records, const SampleLattice& lattice,
               const std::string& path, const std::string& title) {
    lattice.validate();
    if (lattice.ts.size() != 1)
        throw std::invalid_argument("VTK output needs a single time level");
    const std::size_t expected = static_cast<std::size_t>(lattice.nx) * lattice.ny;
    if (records.size() != expected)
        throw std::invalid_argument("VTK output needs the full regular lattice (" +
                                    std::to_string(expected) + " points, got " +
                                    std::to_string(records.size()) + ")");
    for (const FieldRecord& r : records) {
        require_finite(r);
        if (r.t != lattice.ts.front())
            throw std::invalid_argument("VTK output mixes time levels");
    }

    std::ofstream os(path);
    if (!os)
        throw IoError("cannot open " + path + " for writing");

    os << "# vtk DataFile Version 3.0\n";
    os << title << '\n';
    os << "ASCII\n";
    os << "DATASET STRUCTURED_POINTS\n";
    os << "DIMENSIONS " << lattice.nx << ' ' << lattice.ny << " 1\n";
    os << "ORIGIN " << format_double(lattice.x_min) << ' ' << format_double(lattice.y_min)
       << " 0\n";
    os << "SPACING " << format_double(lattice.dx()) << ' ' << format_double(lattice.dy())
       << " 1\n";
    os << "POINT_DATA " << expected << '\n';

    os << "VECTORS velocity double\n";
    for (const FieldRecord& r : records)
        os << format_double(r.u1) << ' ' << format_double(r.u2) << " 0\n";

    os << "SCALARS pressure double\n";
    os << "LOOKUP_TABLE default\n";
    for (const FieldRecord& r : records)
        os << format_double(r.p) << '\n';

    os << "SCALARS vorticity double\n";
    os << "LOOKUP_TABLE default\n";
    for (const FieldRecord& r : records)
        os << format_double(r.vort) << '\n';

    if (!os)
        throw IoError("write failed for " + path);
}

} // namespace eulerlab
