#include "swr/errors.hpp"
#include "swr/evaluate.hpp"
#include "swr/io.hpp"
#include "swr/solver.hpp"
#include "swr/synth.hpp"

#include <pybind11/eigen.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <optional>

namespace py = pybind11;
using namespace pybind11::literals;

namespace {

swr::SeismicVolume volume_from_array(const py::array_t<double>& data, double dt, double d_src,
                                     double d_rcv) {
    if (data.ndim() != 3)
        throw std::invalid_argument("volume array must be (sources, receivers, time)");
    swr::GridGeometry g;
    g.n_sources = static_cast<std::size_t>(data.shape(0));
    g.n_receivers = static_cast<std::size_t>(data.shape(1));
    g.n_time = static_cast<std::size_t>(data.shape(2));
    g.dt = dt;
    g.d_src = d_src;
    g.d_rcv = d_rcv;

    swr::SeismicVolume volume(g);
    const auto view = data.unchecked<3>();
    for (std::size_t s = 0; s < g.n_sources; ++s)
        for (std::size_t r = 0; r < g.n_receivers; ++r)
            for (std::size_t t = 0; t < g.n_time; ++t)
                volume.at(s, r, t) = view(static_cast<py::ssize_t>(s),
                                          static_cast<py::ssize_t>(r),
                                          static_cast<py::ssize_t>(t));
    volume.validate();
    return volume;
}

py::array_t<double> array_from_volume(const swr::SeismicVolume& volume) {
    const swr::GridGeometry& g = volume.geometry;
    py::array_t<double> out({g.n_sources, g.n_receivers, g.n_time});
    auto view = out.mutable_unchecked<3>();
    for (std::size_t s = 0; s < g.n_sources; ++s)
        for (std::size_t r = 0; r < g.n_receivers; ++r)
            for (std::size_t t = 0; t < g.n_time; ++t)
                view(static_cast<py::ssize_t>(s), static_cast<py::ssize_t>(r),
                     static_cast<py::ssize_t>(t)) = volume.at(s, r, t);
    return out;
}

swr::SweepMode mode_from_name(const std::string& name) {
    if (name == "plain") return swr::SweepMode::Plain;
    if (name == "weighted") return swr::SweepMode::ConventionalWeighted;
    if (name == "limited") return swr::SweepMode::LimitedSubspace;
    throw std::invalid_argument("mode must be plain|weighted|limited");
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Seismic wavefield reconstruction via recursively weighted low-rank "
              "matrix factorization";

    py::register_exception<swr::FormatError>(m, "FormatError");
    py::register_exception<swr::SolverFailure>(m, "SolverFailure");

    py::class_<swr::SourceMask>(m, "SourceMask")
        .def(py::init<>())
        .def_readwrite("n_sources", &swr::SourceMask::n_sources)
        .def_readwrite("factor", &swr::SourceMask::factor)
        .def_readwrite("kept", &swr::SourceMask::kept)
        .def("validate", &swr::SourceMask::validate)
        .def("__len__", [](const swr::SourceMask& mask) { return mask.kept.size(); });

    py::class_<swr::WeightOperator>(m, "WeightOperator")
        .def(py::init<>())
        .def(py::init([](const swr::CMatrix& basis, double w) {
                 return swr::make_weight(swr::Subspace{basis}, w);
             }),
             "basis"_a, "w"_a)
        .def_property_readonly("is_identity", &swr::WeightOperator::is_identity)
        .def_property_readonly("w", &swr::WeightOperator::weight)
        .def("apply", &swr::WeightOperator::apply, "matrix"_a, "inverted"_a = false)
        .def("dense", &swr::WeightOperator::dense, "dim"_a, "inverted"_a = false);

    // Index maps and domain transforms.
    m.def("sr_to_mh", [](std::size_t s, std::size_t r, std::size_t n) {
        const swr::MhIndex mh = swr::sr_to_mh(s, r, n);
        return py::make_tuple(mh.m, mh.h);
    });
    m.def("mh_to_sr", [](std::size_t mm, std::size_t h, std::size_t n) -> py::object {
        const auto sr = swr::mh_to_sr(mm, h, n);
        if (!sr) return py::none();
        return py::make_tuple(sr->s, sr->r);
    });
    m.def("embed_sr_to_mh", [](const swr::CMatrix& values) {
        return swr::embed_sr_to_mh({0.0, swr::SliceDomain::SourceReceiver, values}).values;
    });
    m.def("extract_mh_to_sr", [](const swr::CMatrix& values) {
        return swr::extract_mh_to_sr({0.0, swr::SliceDomain::MidpointOffset, values}).values;
    });

    // Sampling.
    m.def("jittered_mask", &swr::jittered_mask, "n_sources"_a, "factor"_a, "seed"_a);
    m.def("sample", [](const swr::CMatrix& mh_values, const swr::SourceMask& mask) {
        return swr::sample({0.0, swr::SliceDomain::MidpointOffset, mh_values}, mask).values;
    });
    m.def("sample_adjoint", [](const swr::CVector& values, const swr::SourceMask& mask) {
        swr::ObservedData observed;
        observed.values = values;
        observed.mask = mask;
        return swr::sample_adjoint(observed).values;
    });

    // Synthetics.
    m.def("ricker", &swr::ricker, "t"_a, "f_peak"_a);
    m.def(
        "generate",
        [](std::size_t n, std::size_t nt, double dt, std::size_t events, double peak_freq,
           std::uint64_t seed, double d_src, double d_rcv, std::optional<double> noise_db) {
            swr::SynthConfig cfg;
            cfg.geometry = {n, n, nt, dt, d_src, d_rcv};
            cfg.events = swr::default_events(events, static_cast<double>(nt - 1) * dt);
            cfg.peak_freq_hz = peak_freq;
            cfg.seed = seed;
            cfg.noise_snr_db = noise_db;
            return array_from_volume(swr::generate(cfg));
        },
        "n"_a = 64, "nt"_a = 512, "dt"_a = 0.004, "events"_a = 4, "peak_freq"_a = 20.0,
        "seed"_a = 0, "d_src"_a = 25.0, "d_rcv"_a = 25.0, "noise_db"_a = py::none());

    // Spectral utilities.
    m.def("bandpass_response", [](double f, double lo, double hi, double transition) {
        return swr::bandpass_response(f, {lo, hi, transition});
    });
    m.def(
        "apply_bandpass",
        [](const py::array_t<double>& data, double dt, double lo, double hi, double transition) {
            return array_from_volume(
                swr::apply_bandpass(volume_from_array(data, dt, 1.0, 1.0), {lo, hi, transition}));
        },
        "volume"_a, "dt"_a, "lo"_a = 7.0, "hi"_a = 74.0, "transition"_a = 3.66);
    m.def("snr_db", [](const py::array_t<double>& truth, const py::array_t<double>& test,
                       double dt) {
        return swr::snr_db(volume_from_array(truth, dt, 1.0, 1.0),
                           volume_from_array(test, dt, 1.0, 1.0));
    }, "truth"_a, "test"_a, "dt"_a = 0.004);
    m.def("slice_snr_db",
          [](const swr::CMatrix& truth, const swr::CMatrix& test) {
              return swr::snr_db(truth, test);
          });

    // Single-slice solve; identity weight operators by default.
    m.def(
        "solve_slice",
        [](const swr::CVector& values, const swr::SourceMask& mask, Eigen::Index rank,
           int iters, double lam, double misfit_tol, std::uint64_t seed,
           const swr::WeightOperator& qop, const swr::WeightOperator& wop) {
            swr::ObservedData observed;
            observed.values = values;
            observed.mask = mask;
            swr::SolveParams params;
            params.rank = rank;
            params.max_iters = iters;
            params.lambda = lam;
            params.misfit_tol = misfit_tol;
            params.seed = seed;
            auto [factors, stats] = swr::solve_slice(observed, qop, wop, params);
            return py::make_tuple(factors.L, factors.R, stats.misfit_history);
        },
        "values"_a, "mask"_a, "rank"_a, "iters"_a = 150, "lam"_a = 1e-4, "misfit_tol"_a = 0.0,
        "seed"_a = 0, "qop"_a = swr::WeightOperator(), "wop"_a = swr::WeightOperator());

    // Full pipeline: subsample a clean volume, sweep, return the recovered
    // volume plus (freq, snr) rows.
    m.def(
        "reconstruct",
        [](const py::array_t<double>& data, double dt, const swr::SourceMask& mask,
           const std::string& mode, Eigen::Index rank, Eigen::Index subspace_rank, double weight,
           double fmin, double fmax, int iters, double lam, std::uint64_t seed,
           bool with_snr) {
            const swr::SeismicVolume truth = volume_from_array(data, dt, 1.0, 1.0);
            swr::SweepConfig cfg;
            cfg.f_min = fmin;
            cfg.f_max = fmax;
            cfg.rank = rank;
            cfg.subspace_rank = mode == "weighted" ? rank : subspace_rank;
            cfg.weight = weight;
            cfg.mode = mode_from_name(mode);
            cfg.solve.max_iters = iters;
            cfg.solve.lambda = lam;
            cfg.solve.seed = seed;

            const swr::FrequencyCube cube = swr::forward_time_fft(truth);
            const auto observed = swr::observe_band(cube, mask, fmin, fmax);
            const auto truth_mh = swr::embed_band(cube, fmin, fmax);
            const swr::RecoveredBand band = swr::recover_band(
                truth.geometry, observed, cfg, with_snr ? &truth_mh : nullptr);

            std::vector<std::pair<double, double>> snr_rows;
            if (with_snr)
                for (const swr::RecoveredSlice& slice : band.slices)
                    snr_rows.emplace_back(slice.freq_hz, slice.snr_db.value_or(0.0));
            return py::make_tuple(array_from_volume(swr::band_to_volume(band, truth.geometry)),
                                  snr_rows);
        },
        "data"_a, "dt"_a, "mask"_a, "mode"_a = "limited", "rank"_a = 85, "subspace_rank"_a = 25,
        "weight"_a = 0.5, "fmin"_a = 7.0, "fmax"_a = 74.0, "iters"_a = 150, "lam"_a = 1e-4,
        "seed"_a = 0, "with_snr"_a = true);

    // SWR1 container and mask text I/O.
    m.def("write_volume", [](const std::filesystem::path& path, const py::array_t<double>& data,
                             double dt, double d_src, double d_rcv) {
        swr::write_volume(path, volume_from_array(data, dt, d_src, d_rcv));
    }, "path"_a, "volume"_a, "dt"_a, "d_src"_a = 25.0, "d_rcv"_a = 25.0);
    m.def("read_volume", [](const std::filesystem::path& path) {
        const swr::SeismicVolume volume = swr::read_volume(path);
        return py::make_tuple(array_from_volume(volume), volume.geometry.dt,
                              volume.geometry.d_src, volume.geometry.d_rcv);
    });
    m.def("write_mask", &swr::write_mask, "path"_a, "mask"_a);
    m.def("read_mask", &swr::read_mask, "path"_a);
}
