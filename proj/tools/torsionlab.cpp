// torsionlab: command-line front end.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "torsionlab/report.hpp"
#include "torsionlab/selftest.hpp"

using namespace torsionlab;

namespace {

#ifndef TORSIONLAB_DATA_DIR
#define TORSIONLAB_DATA_DIR "data"
#endif

std::string data_dir() {
    const char* env = std::getenv("TORSIONLAB_DATA");
    return env && *env ? env : TORSIONLAB_DATA_DIR;
}

unsigned default_precision() {
    const char* env = std::getenv("TORSIONLAB_PRECISION");
    if (!env || !*env) return 256;
    char* end = nullptr;
    const unsigned long v = std::strtoul(env, &end, 10);
    if (*end != '\0' || v < 64 || v > 1u << 20) throw Error(ErrorKind::parse, std::string("TORSIONLAB_PRECISION: bad value '") + env + "'");
    return static_cast<unsigned>(v);
}

struct Inputs {
    std::string fixture;  // empty: the subcommand's default
    std::string pres, rep, alpha, periph;
    unsigned precision = 0;
    std::string out;
};

struct Loaded {
    GroupPresentation pres;
    HolonomyLift rho;
    AlphaMap alpha;
    std::optional<PeripheralData> periph;
    const PeripheralData* periph_ptr() const { return periph ? &*periph : nullptr; }
};

bool file_exists(const std::string& path) { return std::ifstream(path).good(); }

/// Reads every input before any computation; the peripheral file is optional
/// unless named explicitly.
Loaded load(const Inputs& in, const std::string& default_fixture) {
    const std::string fixture = in.fixture.empty() ? default_fixture : in.fixture;
    auto pick = [&](const std::string& given, const char* ext) { return given.empty() ? data_dir() + "/" + fixture + "." + ext : given; };
    const std::string periph_path = pick(in.periph, "periph");
    GroupPresentation pres = GroupPresentation::parse(read_text_file(pick(in.pres, "pres")));
    HolonomyLift rho = parse_representation(pres, read_text_file(pick(in.rep, "rep")));
    AlphaMap alpha = parse_alpha(pres, read_text_file(pick(in.alpha, "alpha")));
    std::optional<PeripheralData> periph;
    if (!in.periph.empty() || file_exists(periph_path)) periph = parse_peripheral(pres, alpha, read_text_file(periph_path));
    return {std::move(pres), std::move(rho), std::move(alpha), std::move(periph)};
}

/// One twist point per token: components separated by ':', each "1", "-1",
/// "i", "-i" or "k/q" (e^{2 pi i k/q}).
TwistPoint parse_zeta(const std::string& token, unsigned bits) {
    std::vector<std::pair<long, long>> fr;
    std::stringstream ss(token);
    std::string part;
    while (std::getline(ss, part, ':')) {
        if (part == "1") fr.emplace_back(0, 1);
        else if (part == "-1") fr.emplace_back(1, 2);
        else if (part == "i") fr.emplace_back(1, 4);
        else if (part == "-i") fr.emplace_back(3, 4);
        else {
            const auto slash = part.find('/');
            try {
                if (slash == std::string::npos) throw std::invalid_argument(part);
                std::size_t used_k = 0, used_q = 0;
                const long k = std::stol(part.substr(0, slash), &used_k);
                const long q = std::stol(part.substr(slash + 1), &used_q);
                if (used_k != slash || used_q != part.size() - slash - 1) throw std::invalid_argument(part);
                fr.emplace_back(k, q);
            } catch (const std::exception&) {
                throw Error(ErrorKind::parse, "twist point component '" + part + "' is not 1, -1, i, -i or k/q");
            }
        }
    }
    if (fr.empty()) throw Error(ErrorKind::parse, "empty twist point");
    return TwistPoint::roots_of_unity(fr, bits);
}

void emit(const Inputs& in, const std::string& text) {
    if (in.out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(in.out, std::ios::binary);
    if (!f) throw Error(ErrorKind::io, "cannot write " + in.out);
    f << text;
    if (!f) throw Error(ErrorKind::io, "write failed for " + in.out);
}

void add_inputs(CLI::App* cmd, Inputs& in, const std::string& fixture) {
    cmd->add_option("--fixture", in.fixture, "fixture name in the data directory (default " + fixture + ")");
    cmd->add_option("--pres", in.pres, "presentation file");
    cmd->add_option("--rep", in.rep, "representation file");
    cmd->add_option("--alpha", in.alpha, "alpha file");
    cmd->add_option("--periph", in.periph, "peripheral file");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"torsionlab: twisted Alexander polynomials of 3-manifold groups"};
    app.require_subcommand(1);
    Inputs in;
    app.add_option("--precision", in.precision, "working precision in bits (default $TORSIONLAB_PRECISION or 256)");
    app.add_option("--out", in.out, "output file (default stdout)");

    int n = 2;
    int n_lo = 2, n_hi = 0;
    std::vector<std::string> zetas{"1"};
    std::optional<std::size_t> column;
    std::optional<int> window;
    std::string format = "text";

    auto* alex = app.add_subcommand("alex", "normalized twisted Alexander polynomial");
    add_inputs(alex, in, "fig8");
    alex->add_option("--n", n, "symmetric power dimension")->required();
    alex->add_option("--column", column, "removed Fox column");
    alex->add_option("--format", format, "text or csv")->check(CLI::IsMember({"text", "csv"}));

    auto* eval = app.add_subcommand("eval", "|Delta| at twist points");
    add_inputs(eval, in, "fig8");
    eval->add_option("--n", n)->required();
    eval->add_option("--zeta", zetas, "twist points: 1, -1, i, -i, k/q; ':' between components");
    eval->add_option("--column", column);

    auto* volume = app.add_subcommand("volume", "n^2 growth fit of log|Delta(zeta)|");
    add_inputs(volume, in, "fig8");
    volume->add_option("--nmin", n_lo)->capture_default_str();
    volume->add_option("--nmax", n_hi)->required();
    volume->add_option("--zeta", zetas);
    volume->add_option("--window", window, "number of top n values fitted");
    volume->add_option("--column", column);

    std::size_t grid = 0;
    auto* mahler = app.add_subcommand("mahler", "Mahler measures of Delta and their n^2 limit");
    add_inputs(mahler, in, "fig8");
    mahler->add_option("--nmin", n_lo)->capture_default_str();
    mahler->add_option("--nmax", n_hi)->required();
    mahler->add_option("--grid", grid, "quadrature nodes per dimension (rank > 1)");

    auto* roots = app.add_subcommand("roots", "roots of Delta with circle margin and root sum");
    add_inputs(roots, in, "fig8");
    roots->add_option("--n", n)->required();

    std::string spectrum_path;
    std::size_t synth_count = 200;
    std::uint64_t seed = 1;
    long k = 0;
    double s_re = 3, s_im = 0, truncation = -1;
    int l_max = 60;
    auto* zeta = app.add_subcommand("zeta", "truncated Ruelle and Selberg functions of a length spectrum");
    zeta->add_option("--spectrum", spectrum_path, "CSV spectrum (default: synthetic)");
    zeta->add_option("--count", synth_count, "synthetic spectrum size")->capture_default_str();
    zeta->add_option("--seed", seed)->capture_default_str();
    zeta->add_option("--k", k)->capture_default_str();
    zeta->add_option("--s", s_re)->capture_default_str();
    zeta->add_option("--s-im", s_im)->capture_default_str();
    zeta->add_option("--n", n, "twisted Ruelle dimension")->capture_default_str();
    zeta->add_option("--lmax", l_max)->capture_default_str();
    zeta->add_option("--truncation", truncation, "length cutoff L");
    zeta->add_option("--zeta", zetas);

    int m_max = 8;
    double vol = 2.029883212819307;
    std::string parity = "even";
    auto* xcheck = app.add_subcommand("xcheck", "rational cross-check between Delta values and zeta data");
    add_inputs(xcheck, in, "fig8");
    xcheck->add_option("--spectrum", spectrum_path, "exported spectrum (default: synthetic self-consistency run)");
    xcheck->add_option("--count", synth_count)->capture_default_str();
    xcheck->add_option("--seed", seed)->capture_default_str();
    xcheck->add_option("--mmax", m_max)->capture_default_str();
    xcheck->add_option("--vol", vol)->capture_default_str();
    xcheck->add_option("--parity", parity)->check(CLI::IsMember({"even", "odd"}));
    xcheck->add_option("--truncation", truncation);
    xcheck->add_option("--zeta", zetas);

    auto* anosov = app.add_subcommand("anosov", "product of odd Delta for a fibration and its roots");
    add_inputs(anosov, in, "fig8bundle");
    anosov->add_option("--n", n)->required();

    auto* selftest = app.add_subcommand("selftest", "built-in example corpus");

    try {
        try {
            app.parse(argc, argv);
        } catch (const CLI::CallForHelp&) {
            std::cout << app.help();
            return 0;
        } catch (const CLI::CallForAllHelp&) {
            std::cout << app.help("", CLI::AppFormatMode::All);
            return 0;
        } catch (const CLI::ParseError& e) {
            std::cerr << "torsionlab: error[usage]: " << e.what() << '\n';
            return 2;
        }
        const unsigned bits = in.precision ? in.precision : default_precision();
        if (bits < 64) throw Error(ErrorKind::domain, "precision must be at least 64 bits");
        WorkingPrecision wp(bits);

        if (selftest->parsed()) {
            std::ostringstream out;
            int failed = 0;
            for (const auto& c : run_selftest(data_dir())) {
                out << (c.passed ? "PASS " : "FAIL ") << c.name;
                if (!c.passed) {
                    out << ": " << c.detail;
                    ++failed;
                }
                out << '\n';
            }
            out << (failed ? "selftest: " + std::to_string(failed) + " failed\n" : std::string("selftest: all passed\n"));
            emit(in, out.str());
            return failed ? 1 : 0;
        }

        if (zeta->parsed()) {
            const TwistPoint z = parse_zeta(zetas.front(), bits);
            LengthSpectrum sp = spectrum_path.empty() ? synthetic_spectrum(synth_count, z.rank(), seed) : load_spectrum(spectrum_path);
            if (truncation >= 0) sp = truncated(sp, truncation);
            const BigComplex s{BigFloat(s_re), BigFloat(s_im)};
            const ZetaValue r = ruelle_r(sp, z, k, s);
            const ZetaValue big = ruelle_big_r(sp, z, n, s);
            const ZetaValue zs = selberg_z(sp, z, k, s, l_max);
            const GrowthReport g = growth_check(sp);
            std::ostringstream out;
            out << "entries: " << sp.entries.size() << "\ntruncation: " << fmt(sp.truncation) << '\n';
            out << "ruelle_r: " << fmt(r.value.re(), bits) << ' ' << fmt(r.value.im(), bits) << (r.formal ? " formal" : "") << '\n';
            out << "ruelle_big_r: " << fmt(big.value.re(), bits) << ' ' << fmt(big.value.im(), bits) << (big.formal ? " formal" : "") << '\n';
            out << "factorization_residual: " << factorization_residual(sp, z, n, s).to_string(6) << '\n';
            out << "selberg_z: " << fmt(zs.value.re(), bits) << ' ' << fmt(zs.value.im(), bits) << '\n';
            out << "selberg_inner_tail: " << zs.inner_tail.to_string(6) << '\n';
            out << "ruelle_selberg_residual: " << ruelle_selberg_residual(sp, z, k, s, l_max).to_string(6) << '\n';
            out << "growth_C: " << fmt(g.C) << (g.pass ? " pass" : " flagged") << '\n';
            if (!sp.empty()) {
                const SeriesReport sr = series_bound_report(sp, z);
                out << "series_total: " << fmt(sr.total) << "\nseries_tail_estimate: " << fmt(sr.tail_estimate) << '\n';
            }
            emit(in, out.str());
            return 0;
        }

        if (xcheck->parsed()) {
            const Parity par = parity == "odd" ? Parity::odd : Parity::even;
            const TwistPoint z = parse_zeta(zetas.front(), bits);
            std::ostringstream out;
            out << "m,parity,residual\n";
            if (spectrum_path.empty()) {
                // synthetic demonstration: the left side is accumulated from the increments
                const LengthSpectrum sp = synthetic_spectrum(synth_count, z.rank(), seed);
                const BigFloat slope = BigFloat(vol) / BigFloat::pi(bits);
                BigFloat lhs(Bits{bits});
                for (int m = 2; m <= m_max; ++m) {
                    if (m > 2) {
                        if (par == Parity::even) {
                            const BigComplex s(BigFloat(static_cast<long>(2 * m - 1)) / BigFloat(2L));
                            lhs = lhs + slope * BigFloat(static_cast<long>((m - 2) * (m + 2) - (m - 3) * (m + 1))) -
                                  ruelle_r(sp, z, -static_cast<long>(2 * m - 1), s).log_value.re();
                        } else {
                            lhs = lhs + slope * BigFloat(static_cast<long>((m - 2) * (m + 3) - (m - 3) * (m + 2))) -
                                  ruelle_r(sp, z, -static_cast<long>(2 * m), BigComplex(BigFloat(static_cast<long>(m)))).log_value.re();
                        }
                    }
                    out << m << ',' << parity << ',' << rational_corollary_residual(lhs, sp, z, vol, m, par).to_string(6) << '\n';
                }
            } else {
                const Loaded L = load(in, "fig8");
                LengthSpectrum sp = load_spectrum(spectrum_path);
                if (truncation >= 0) sp = truncated(sp, truncation);
                for (int m = 2; m <= m_max; ++m)
                    out << m << ',' << parity << ','
                        << rational_corollary_residual(L.rho, L.alpha, z, sp, vol, m, par, L.periph_ptr()).to_string(6) << '\n';
            }
            emit(in, out.str());
            return 0;
        }

        const Loaded L = load(in, anosov->parsed() ? "fig8bundle" : "fig8");
        if (alex->parsed()) {
            WadaOptions opt;
            opt.column = column;
            const TwistedAlexResult r = twisted_alexander(L.rho, n, L.alpha, L.periph_ptr(), opt);
            if (format == "csv" && r.polynomial) emit(in, polynomial_csv(*r.polynomial, bits));
            else emit(in, alexander_text(r, bits));
        } else if (eval->parsed()) {
            std::ostringstream out;
            out << "n,zeta_index,modulus,log_modulus,column,fallback\n";
            for (std::size_t i = 0; i < zetas.size(); ++i) {
                const DeltaValue d = evaluate_delta_at(L.rho, n, L.alpha, parse_zeta(zetas[i], bits), L.periph_ptr(), column);
                out << n << ',' << i << ',' << fmt(d.modulus, bits) << ',' << fmt(log(d.modulus), bits) << ',' << d.column << ','
                    << (d.fallback ? 1 : 0) << '\n';
            }
            emit(in, out.str());
        } else if (volume->parsed()) {
            std::string text;
            for (std::size_t i = 0; i < zetas.size(); ++i) {
                VolumeOptions opt;
                opt.window = window;
                opt.column = column;
                opt.zeta_index = i;
                text += volume_csv(volume_sequence(L.rho, L.alpha, parse_zeta(zetas[i], bits), n_lo, n_hi, L.periph_ptr(), opt), bits);
            }
            emit(in, text);
        } else if (mahler->parsed()) {
            MahlerOptions opt;
            opt.grid = grid;
            emit(in, mahler_csv(mahler_sequence(L.rho, L.alpha, n_lo, n_hi, L.periph_ptr(), opt), bits));
        } else if (roots->parsed()) {
            const TwistedAlexResult r = twisted_alexander(L.rho, n, L.alpha, L.periph_ptr());
            const auto rs = polynomial_roots(*r.polynomial);
            std::ostringstream out;
            out << roots_csv(rs, bits);
            out << "margin=" << fmt(unit_circle_margin(rs), bits) << '\n';
            out << "root_log_sum=" << fmt(root_log_sum(rs, n).sum, bits) << '\n';
            emit(in, out.str());
        } else if (anosov->parsed()) {
            const CharPolyProduct cp = characteristic_product(L.rho, L.alpha, n, L.periph_ptr());
            emit(in, anosov_csv(cp, hyperbolicity_report(cp), bits));
        }
        return 0;
    } catch (const Error& e) {
        std::cerr << "torsionlab: error[" << to_string(e.kind()) << "]: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "torsionlab: error[internal]: " << e.what() << '\n';
        return 1;
    }
}
