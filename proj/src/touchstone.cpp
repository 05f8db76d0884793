#include "rfkit/touchstone.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include "atomic_write.hpp"
#include "rfkit/errors.hpp"

namespace rfkit {

namespace {

void append_sci(std::string& out, double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.9e", v);  // 10 significant digits
    out += buf;
}

} // namespace

void write_touchstone(const SParamSweep& sweep, const std::filesystem::path& path) {
    if (sweep.freq_hz.empty()) {
        throw domain_error("write_touchstone: empty sweep");
    }
    std::string out;
    out.reserve(sweep.freq_hz.size() * 160 + 64);
    {
        char buf[64];
        std::snprintf(buf, sizeof(buf), "# HZ S RI R %g\n", sweep.z_ref);
        out += buf;
    }
    for (size_t i = 0; i < sweep.freq_hz.size(); ++i) {
        const STwoPort& s = sweep.s[i];
        append_sci(out, sweep.freq_hz[i]);
        for (const Complex& c : {s.s11, s.s21, s.s12, s.s22}) {
            out += ' ';
            append_sci(out, c.real());
            out += ' ';
            append_sci(out, c.imag());
        }
        out += '\n';
    }
    detail::write_file_atomic(path, out);
}

SParamSweep read_touchstone(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw io_error("cannot open " + path.string());
    }

    SParamSweep sweep;
    bool have_option = false;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '!') continue;
        if (line[0] == '#') {
            std::istringstream os(line.substr(1));
            std::string freq_unit, param, fmt, r_marker;
            double z_ref = 50.0;
            os >> freq_unit >> param >> fmt >> r_marker >> z_ref;
            if (freq_unit != "HZ" || param != "S" || fmt != "RI" || r_marker != "R") {
                throw io_error(path.string() + ": unsupported option line '" +
                               line + "' (need '# HZ S RI R <z>')");
            }
            sweep.z_ref = z_ref;
            have_option = true;
            continue;
        }
        if (!have_option) {
            throw io_error(path.string() + ": data before option line");
        }
        std::istringstream ds(line);
        double f, re11, im11, re21, im21, re12, im12, re22, im22;
        if (!(ds >> f >> re11 >> im11 >> re21 >> im21 >> re12 >> im12 >> re22 >> im22)) {
            throw io_error(path.string() + ": malformed data line '" + line + "'");
        }
        sweep.freq_hz.push_back(f);
        sweep.s.push_back({Complex(re11, im11), Complex(re12, im12),
                           Complex(re21, im21), Complex(re22, im22)});
    }
    if (sweep.freq_hz.empty()) {
        throw io_error(path.string() + ": no data lines");
    }
    sweep.grid.f_start_hz = sweep.freq_hz.front();
    sweep.grid.f_stop_hz = sweep.freq_hz.back();
    sweep.grid.n_points = static_cast<int>(sweep.freq_hz.size());
    sweep.grid.spacing = GridSpacing::Linear;
    return sweep;
}

void write_csv(const SParamSweep& sweep, const std::filesystem::path& path) {
    if (sweep.freq_hz.empty()) {
        throw domain_error("write_csv: empty sweep");
    }
    std::string out = "freq_hz,s11_db,s21_db\n";
    out.reserve(sweep.freq_hz.size() * 48 + out.size());
    char buf[96];
    auto db = [](const Complex& c) {
        const double mag = std::abs(c);
        if (!(mag > 1e-10)) return -200.0;  // floor, keeps -inf out
        return std::max(20.0 * std::log10(mag), -200.0);
    };
    for (size_t i = 0; i < sweep.freq_hz.size(); ++i) {
        std::snprintf(buf, sizeof(buf), "%.10g,%.6f,%.6f\n", sweep.freq_hz[i],
                      db(sweep.s[i].s11), db(sweep.s[i].s21));
        out += buf;
    }
    detail::write_file_atomic(path, out);
}

} // namespace rfkit
