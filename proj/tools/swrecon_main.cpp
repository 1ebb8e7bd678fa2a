#include "swr/errors.hpp"
#include "swr/evaluate.hpp"
#include "swr/io.hpp"
#include "swr/solver.hpp"
#include "swr/synth.hpp"

#include <CLI11.hpp>

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitData = 2;
constexpr int kExitSolver = 3;

struct PassBand {
    double lo = 7.0;
    double hi = 74.0;
};

PassBand parse_pass(const std::string& text) {
    const auto colon = text.find(':');
    if (colon == std::string::npos)
        throw CLI::ValidationError("--pass", "expected LO:HI, got '" + text + "'");
    PassBand band;
    try {
        band.lo = std::stod(text.substr(0, colon));
        band.hi = std::stod(text.substr(colon + 1));
    } catch (const std::exception&) {
        throw CLI::ValidationError("--pass", "expected LO:HI, got '" + text + "'");
    }
    return band;
}

int run_synth(std::size_t sources, std::size_t receivers, std::size_t nt, double dt,
              std::size_t events, double peak_freq, std::uint64_t seed, double d_src,
              double d_rcv, std::optional<double> noise_db, const std::string& out_path) {
    swr::SynthConfig cfg;
    cfg.geometry = {sources, receivers, nt, dt, d_src, d_rcv};
    cfg.events = swr::default_events(events, static_cast<double>(nt - 1) * dt);
    cfg.peak_freq_hz = peak_freq;
    cfg.seed = seed;
    cfg.noise_snr_db = noise_db;
    swr::write_volume(out_path, swr::generate(cfg));
    return 0;
}

int run_mask(std::size_t sources, std::size_t factor, std::uint64_t seed,
             const std::string& out_path) {
    swr::write_mask(out_path, swr::jittered_mask(sources, factor, seed));
    return 0;
}

int run_reconstruct(const std::string& data_path, const std::string& mask_path,
                    const std::string& mode_name, Eigen::Index rank, Eigen::Index subspace_rank,
                    double weight, double fmin, double fmax, int iters, double lambda,
                    std::uint64_t seed, const std::string& out_path,
                    const std::string& snr_csv_path, const std::string& truth_path) {
    const swr::SeismicVolume data = swr::read_volume(data_path);
    const swr::SourceMask mask = swr::read_mask(mask_path);
    if (mask.n_sources != data.geometry.n_sources)
        throw std::invalid_argument("reconstruct: mask covers " +
                                    std::to_string(mask.n_sources) + " sources but data has " +
                                    std::to_string(data.geometry.n_sources));

    swr::SweepConfig cfg;
    cfg.f_min = fmin;
    cfg.f_max = fmax;
    cfg.rank = rank;
    cfg.weight = weight;
    cfg.solve.max_iters = iters;
    cfg.solve.lambda = lambda;
    cfg.solve.seed = seed;
    if (mode_name == "plain") {
        cfg.mode = swr::SweepMode::Plain;
        cfg.subspace_rank = 1;
    } else if (mode_name == "weighted") {
        // Weighted is limited with the subspace rank pinned to the full rank.
        cfg.mode = swr::SweepMode::ConventionalWeighted;
        cfg.subspace_rank = rank;
    } else if (mode_name == "limited") {
        cfg.mode = swr::SweepMode::LimitedSubspace;
        cfg.subspace_rank = subspace_rank;
    } else {
        throw CLI::ValidationError("--mode", "expected plain|weighted|limited");
    }
    cfg.validate();

    const swr::FrequencyCube cube = swr::forward_time_fft(data);
    const std::vector<swr::ObservedData> observed =
        swr::observe_band(cube, mask, cfg.f_min, cfg.f_max);
    if (observed.empty())
        throw std::invalid_argument("reconstruct: no FFT bins inside the requested band");

    std::vector<swr::CMatrix> truth_mh;
    if (!truth_path.empty()) {
        const swr::SeismicVolume truth = swr::read_volume(truth_path);
        if (!(truth.geometry == data.geometry))
            throw std::invalid_argument("reconstruct: truth geometry differs from data");
        truth_mh = swr::embed_band(swr::forward_time_fft(truth), cfg.f_min, cfg.f_max);
    }

    const swr::RecoveredBand band = swr::recover_band(
        data.geometry, observed, cfg, truth_mh.empty() ? nullptr : &truth_mh);
    swr::write_volume(out_path, swr::band_to_volume(band, data.geometry));

    if (!snr_csv_path.empty()) {
        if (truth_path.empty())
            throw CLI::ValidationError("--snr-csv", "requires --truth");
        std::vector<std::pair<double, double>> rows;
        for (const swr::RecoveredSlice& slice : band.slices)
            rows.emplace_back(slice.freq_hz, slice.snr_db.value_or(0.0));
        swr::write_snr_csv(snr_csv_path, rows);
    }
    return 0;
}

int run_evaluate(const std::string& truth_path, const std::string& test_path,
                 const PassBand& band, double transition, const std::string& out_path) {
    const swr::SeismicVolume truth = swr::read_volume(truth_path);
    const swr::SeismicVolume test = swr::read_volume(test_path);
    const swr::BandpassSpec spec{band.lo, band.hi, transition};
    const double snr =
        swr::snr_db(swr::apply_bandpass(truth, spec), swr::apply_bandpass(test, spec));
    swr::write_metric_csv(out_path, {{"time_domain_snr_db", snr}});
    return 0;
}

int run_bandpass(const std::string& in_path, const std::string& out_path, const PassBand& band,
                 double transition) {
    const swr::SeismicVolume volume = swr::read_volume(in_path);
    swr::write_volume(out_path, swr::apply_bandpass(volume, {band.lo, band.hi, transition}));
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Seismic wavefield reconstruction via recursively weighted low-rank "
                 "matrix factorization"};
    app.require_subcommand(1);

    // synth
    std::size_t sources = 64, receivers = 64, nt = 512, events = 4;
    double dt = 0.004, peak_freq = 20.0, d_src = 25.0, d_rcv = 25.0;
    std::uint64_t synth_seed = 0;
    double noise_db_value = 0.0;
    std::string synth_out;
    CLI::App* synth = app.add_subcommand("synth", "Generate a synthetic seismic line");
    synth->add_option("--sources", sources, "Source count")->capture_default_str();
    synth->add_option("--receivers", receivers, "Receiver count")->capture_default_str();
    synth->add_option("--nt", nt, "Time samples")->capture_default_str();
    synth->add_option("--dt", dt, "Sampling interval, s")->capture_default_str();
    synth->add_option("--events", events, "Number of reflection events")->capture_default_str();
    synth->add_option("--peak-freq", peak_freq, "Ricker peak frequency, Hz")
        ->capture_default_str();
    synth->add_option("--seed", synth_seed, "RNG seed")->capture_default_str();
    synth->add_option("--d-src", d_src, "Source spacing, m")->capture_default_str();
    synth->add_option("--d-rcv", d_rcv, "Receiver spacing, m")->capture_default_str();
    CLI::Option* noise_opt =
        synth->add_option("--noise-db", noise_db_value, "Additive white noise S/R, dB");
    synth->add_option("--out", synth_out, "Output volume path")->required();

    // mask
    std::size_t mask_sources = 64, factor = 4;
    std::uint64_t mask_seed = 0;
    std::string mask_out;
    CLI::App* mask_cmd = app.add_subcommand("mask", "Draw a jittered source mask");
    mask_cmd->add_option("--sources", mask_sources, "Source count")->capture_default_str();
    mask_cmd->add_option("--factor", factor, "Subsampling factor")->capture_default_str();
    mask_cmd->add_option("--seed", mask_seed, "RNG seed")->capture_default_str();
    mask_cmd->add_option("--out", mask_out, "Output mask path")->required();

    // reconstruct
    std::string data_path, mask_path, mode_name = "limited", recon_out, snr_csv, truth_path;
    Eigen::Index rank = 85, subspace_rank = 25;
    double weight = 0.5, fmin = 7.0, fmax = 74.0, lambda = 1e-4;
    int iters = 150;
    std::uint64_t recon_seed = 0;
    CLI::App* recon = app.add_subcommand("reconstruct", "Recover a full line from masked data");
    recon->add_option("--data", data_path, "Input volume (subsampled per --mask)")->required();
    recon->add_option("--mask", mask_path, "Source mask path")->required();
    recon->add_option("--mode", mode_name, "plain|weighted|limited")->capture_default_str();
    recon->add_option("--rank", rank, "Factorization rank r")->capture_default_str();
    recon->add_option("--subspace-rank", subspace_rank, "Weight subspace rank r_s")
        ->capture_default_str();
    recon->add_option("--weight", weight, "Prior subspace weight w in (0, 1]")
        ->capture_default_str();
    recon->add_option("--fmin", fmin, "Band start, Hz")->capture_default_str();
    recon->add_option("--fmax", fmax, "Band end, Hz")->capture_default_str();
    recon->add_option("--iters", iters, "Iterations per slice")->capture_default_str();
    recon->add_option("--lambda", lambda, "Frobenius penalty (relative to |b|^2)")
        ->capture_default_str();
    recon->add_option("--seed", recon_seed, "RNG seed")->capture_default_str();
    recon->add_option("--out", recon_out, "Output volume path")->required();
    recon->add_option("--snr-csv", snr_csv, "Per-frequency S/R CSV (needs --truth)");
    recon->add_option("--truth", truth_path, "Ground-truth volume for S/R");

    // evaluate
    std::string eval_truth, eval_test, eval_out, eval_pass = "7:74";
    double eval_transition = 3.66;
    CLI::App* eval = app.add_subcommand("evaluate", "Bandpassed time-domain S/R of two volumes");
    eval->add_option("--truth", eval_truth, "Ground-truth volume")->required();
    eval->add_option("--test", eval_test, "Volume under test")->required();
    eval->add_option("--pass", eval_pass, "Passband LO:HI, Hz")->capture_default_str();
    eval->add_option("--transition", eval_transition, "Taper width, Hz")->capture_default_str();
    eval->add_option("--out", eval_out, "Output CSV path")->required();

    // bandpass
    std::string bp_in, bp_out, bp_pass = "7:74";
    double bp_transition = 3.66;
    CLI::App* bandpass = app.add_subcommand("bandpass", "Bandpass-filter a volume");
    bandpass->add_option("--in", bp_in, "Input volume")->required();
    bandpass->add_option("--out", bp_out, "Output volume")->required();
    bandpass->add_option("--pass", bp_pass, "Passband LO:HI, Hz")->capture_default_str();
    bandpass->add_option("--transition", bp_transition, "Taper width, Hz")
        ->capture_default_str();

    try {
        app.parse(argc, argv);

        if (synth->parsed()) {
            std::optional<double> noise;
            if (noise_opt->count() > 0) noise = noise_db_value;
            return run_synth(sources, receivers, nt, dt, events, peak_freq, synth_seed, d_src,
                             d_rcv, noise, synth_out);
        }
        if (mask_cmd->parsed()) return run_mask(mask_sources, factor, mask_seed, mask_out);
        if (recon->parsed())
            return run_reconstruct(data_path, mask_path, mode_name, rank, subspace_rank, weight,
                                   fmin, fmax, iters, lambda, recon_seed, recon_out, snr_csv,
                                   truth_path);
        if (eval->parsed())
            return run_evaluate(eval_truth, eval_test, parse_pass(eval_pass), eval_transition,
                                eval_out);
        if (bandpass->parsed())
            return run_bandpass(bp_in, bp_out, parse_pass(bp_pass), bp_transition);
        return kExitUsage;
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : kExitUsage;
    } catch (const swr::SolverFailure& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitSolver;
    } catch (const swr::SweepFailure& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitSolver;
    } catch (const swr::NumericError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitSolver;
    } catch (const swr::FormatError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitData;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitData;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitData;
    }
}
