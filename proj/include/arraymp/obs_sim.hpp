#pragma once

#include <array>
#include <optional>
#include <random>
#include <vector>

#include "arraymp/constellation.hpp"
#include "arraymp/frames.hpp"
#include "arraymp/so3.hpp"

namespace arraymp {

constexpr int kNumAntennas = 5;
constexpr double kGpsL1Wavelength = 0.1905;  // m

/// Five-element array: antennas 1..3 along body +x, antennas 1,4,5 along
/// body +y. Distances must allow single-shot phase disambiguation:
/// every distance > lambda/2 while 0 < |d12-d23| <= lambda/2 and
/// 0 < |d14-d45| <= lambda/2.
struct ArrayGeometry {
    double d12 = 0.30;
    double d23 = 0.39;
    double d14 = 0.30;
    double d45 = 0.39;
    double wavelength = kGpsL1Wavelength;

    /// Body-frame offset of antenna r (1-based) from antenna 1.
    Vec3 body_offset(int r) const;
    /// Throws ConfigError when the disambiguation conditions fail.
    void validate() const;
};

enum class ReceptionScenario { kLos, kNlos, kMultipath, kBlocked };

/// One reflected ray reaching the array.
struct MultipathPath {
    double amplitude = 0.0;                  // relative to the direct signal
    Vec3 reflection_point = Vec3::Zero();    // ENU, same frame as the epoch
    Vec3 arrival_dir = Vec3::UnitZ();        // unit, ENU, antenna -> apparent source
    std::array<double, kNumAntennas> excess_path{};   // delta_r, m
    std::array<double, kNumAntennas> phase_delay{};   // wrapped to (-pi, pi], rad
};

/// Street canyon: two walls parallel to the vehicle heading, facade heights
/// drawn per 10 m segment. Segment s=0 starts at the vehicle; negative s is
/// behind it (the height field moves with the vehicle).
struct CanyonModel {
    double half_width_left = 15.0;   // m
    double half_width_right = 15.0;  // m
    double amp_min = 0.2;            // reflection amplitude range
    double amp_max = 0.8;
    double segment_length = 10.0;    // m of facade per height sample
    int max_reflections = 2;         // paths kept per satellite (<= one per wall)
    std::vector<double> left_heights;   // m, one per segment
    std::vector<double> right_heights;

    enum class Side { kLeft, kRight };

    double height_at(Side side, double s) const;

    /// Rayleigh-sampled heights over +-extent meters of street.
    static CanyonModel make(double half_width, double rayleigh_scale,
                            std::mt19937_64& rng, double extent = 400.0);
    static CanyonModel suburban(std::mt19937_64& rng);  // 15 m, scale 8 m
    static CanyonModel urban(std::mt19937_64& rng);     // 10 m, scale 20 m
    static CanyonModel open_sky();                      // zero-height walls
};

struct NoiseConfig {
    double sigma_pseudorange = 0.5;  // m
    double sigma_phase = 0.001;      // m (applied as sigma/lambda cycles)
    std::uint64_t seed = 0;          // master seed recorded with the scenario
};

/// Per-satellite observation block of one epoch.
struct SatObservation {
    int prn = 0;
    EcefPos sat_pos = EcefPos::Zero();
    double elevation = 0.0;
    double azimuth = 0.0;
    Eigen::Matrix<double, kNumAntennas, 1> pseudorange;    // m
    Eigen::Matrix<double, kNumAntennas, 1> carrier_phase;  // cycles
    ReceptionScenario scenario = ReceptionScenario::kLos;
    bool contaminated = false;  // truth label: NLOS or multipath
    std::vector<MultipathPath> paths;
};

struct ArrayEpoch {
    GpsTime time;
    GeodeticPosition enu_origin;     // shared frame for positions and LOS
    Vec3 truth_position = Vec3::Zero();  // antenna 1, ENU
    Mat3 truth_attitude = Mat3::Identity();
    std::vector<SatObservation> sats;

    Eigen::MatrixX3d los() const;  // H: unit antenna-1 -> satellite rows, ENU
    std::vector<uint8_t> truth_flags() const;
    Eigen::Index size() const { return static_cast<Eigen::Index>(sats.size()); }
};

/// Relative amplitude and phase of one reflection at one antenna; excess_path
/// only participates in the pseudorange error.
struct PathTerm {
    double amplitude = 0.0;
    double excess_path = 0.0;  // m
    double phase_delay = 0.0;  // rad
};

/// ||1 + sum a*exp(j*dphi)||: magnitude of the composite signal phasor.
double composite_amplitude(const std::vector<PathTerm>& terms);

/// Guard below which the composite signal is treated as destructively faded.
constexpr double kFadeGuard = 0.05;

/// Extra distance traveled via reflection point o versus the direct path.
/// Throws DegenerateGeometryError when any two points coincide.
double excess_path_length(const Vec3& sat, const Vec3& antenna, const Vec3& refl);

/// Maps antenna-1 excess path to the other four antennas from the arrival
/// direction: delta_r = delta_1 - d_1r . q (world-frame baselines).
/// Results are clamped at zero to keep grazing geometry physical.
std::array<double, kNumAntennas> propagate_to_antennas(double delta_1,
                                                       const Vec3& arrival_dir,
                                                       const ArrayGeometry& geometry,
                                                       const Mat3& attitude);

/// Carrier phase delay 2*pi*delta/lambda wrapped to (-pi, pi].
double phase_delay(double excess_path, double wavelength);

/// Carrier phase error (rad) of the composite signal, four-quadrant.
/// Throws DestructiveFadeError below the composite-amplitude guard.
double carrier_phase_error(const std::vector<PathTerm>& terms);

/// Pseudorange error (m) of the composite signal.
double pseudorange_error(const std::vector<PathTerm>& terms);

/// Canyon interaction of one satellite seen from antenna 1.
struct CanyonTrace {
    std::vector<MultipathPath> paths;  // one per reflecting wall, at most
    bool direct_blocked = false;
};

/// Mirror-image reflection against both canyon walls plus the direct-path
/// blockage test. Positions are ENU in the epoch frame; heading is the
/// street direction (radians from East, counterclockwise).
CanyonTrace reflect_against_canyon(const Vec3& sat_enu, const Vec3& antenna_enu,
                                   const CanyonModel& canyon, double heading,
                                   const ArrayGeometry& geometry, const Mat3& attitude,
                                   std::mt19937_64& rng);

struct EpochSettings {
    double elevation_cutoff = 15.0 * M_PI / 180.0;  // rad
};

/// Simulates one epoch of array observations from a truth pose.
/// Satellites are classified LOS / NLOS / multipath / blocked against the
/// canyon; blocked ones are excluded. Throws EmptyEpochError when nothing
/// remains visible.
ArrayEpoch generate_epoch(const GeodeticPosition& truth_geodetic,
                          const Mat3& truth_attitude,
                          const std::vector<std::pair<int, EcefPos>>& sats,
                          const CanyonModel& canyon, const ArrayGeometry& geometry,
                          const NoiseConfig& noise, const EpochSettings& settings,
                          const GpsTime& time, const GeodeticPosition& enu_origin,
                          std::mt19937_64& rng);

}  // namespace arraymp
