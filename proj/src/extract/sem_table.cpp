#include "rdm/extract/sem_table.hpp"

#include <stdexcept>

namespace rdm {

namespace {

using K = VendorCell::Kind;

constexpr VendorCell key(std::string_view k) { return {K::Key, k}; }
constexpr VendorCell kAbsent{K::Absent, {}};
constexpr VendorCell kComputed{K::Computed, {}};

constexpr std::array<SemTableRow, 17> kTable = {{
    {"Acceleration Voltage", SemField::AccelerationVoltage,
     {key("EHT"), key("HV"), key("Beam.HV")},
     "https://purls.helmholtz-metadaten.de/emg/EMG_00000004"},
    {"Dwell Time", SemField::DwellTime,
     {key("Dwell Time"), key("DwellTime"), key("Scan.Dwelltime")},
     "https://purls.helmholtz-metadaten.de/emg/EMG_00000015"},
    {"Stage X", SemField::StageX, {key("Stage at X"), key("StageX"), key("Stage.StageX")}, ""},
    {"Stage Y", SemField::StageY, {key("Stage at Y"), key("StageY"), key("Stage.StageY")}, ""},
    {"Stage Z", SemField::StageZ, {key("Stage at Z"), key("StageZ"), key("Stage.StageZ")}, ""},
    {"Stage Rotation", SemField::StageRotation,
     {key("Stage at R"), key("StageRotation"), key("Stage.StageR")}, ""},
    {"Working Distance", SemField::WorkingDistance,
     {key("WD"), key("WD"), key("Stage.WorkingDistance")},
     "https://purls.helmholtz-metadaten.de/emg/EMG_00000050"},
    {"Pixel Size", SemField::PixelSize,
     {key("Pixel Size"), key("PixelSizeX"), key("Scan.PixelWidth")},
     "https://w3id.org/pmd/mo/PixelSize"},
    {"Emission Current", SemField::EmissionCurrent,
     {kAbsent, key("EmissionCurrent"), key("EBeam.EmissionCurrent")},
     "https://purls.helmholtz-metadaten.de/emg/EMG_00000025"},
    // Vendor C prints this key without a section; any section matches.
    {"Beam Current", SemField::BeamCurrent,
     {key("Beam Current"), key("PredictedBeamCurrent"), key("BeamCurrent")},
     "https://purls.helmholtz-metadaten.de/emg/EMG_00000006"},
    {"Frame Time", SemField::FrameTime, {key("Cycle Time"), kAbsent, kAbsent},
     "https://w3id.org/pmd/mo/FrameTime"},
    {"Frame Time", SemField::LineTime, {key("Line Time"), kAbsent, key("EScan.LineTime")}, ""},
    {"Magnification", SemField::Magnification, {key("Mag"), key("Magnification"), kComputed},
     "https://w3id.org/pmd/mo/ActualMagnification"},
    {"Chamber Pressure", SemField::ChamberPressure,
     {key("Chamber"), key("ChamberPressure"), key("Vacuum.ChPressure")},
     "https://w3id.org/pmd/mo/ChamberVacuum"},
    {"System Vacuum", SemField::SystemVacuum, {key("System Vacuum"), kAbsent, kAbsent},
     "https://w3id.org/pmd/mo/SystemVacuum"},
    {"Gun Vacuum", SemField::GunVacuum, {key("Gun Vacuum"), kAbsent, kAbsent},
     "https://w3id.org/pmd/mo/GunVacuum"},
    {"Databar Size", SemField::DatabarRows, {kComputed, key("ImageStripSize"), kComputed}, ""},
}};

}  // namespace

std::span<const SemTableRow> sem_table() noexcept { return kTable; }

const VendorCell& cell(const SemTableRow& row, VendorFormat vendor) {
  switch (vendor) {
    case VendorFormat::VendorA: return row.cells[0];
    case VendorFormat::VendorB: return row.cells[1];
    case VendorFormat::VendorC: return row.cells[2];
    case VendorFormat::Unknown: break;
  }
  throw std::invalid_argument("no table column for unknown vendor");
}

GeometryKeys geometry_keys(VendorFormat vendor) {
  switch (vendor) {
    case VendorFormat::VendorA: return {"Image Width", "Image Height", "Scan Rows"};
    case VendorFormat::VendorB: return {"ResolutionX", "ResolutionY", ""};
    case VendorFormat::VendorC: return {"Image.ResolutionX", "Image.ResolutionY", "Scan.ScanRows"};
    case VendorFormat::Unknown: break;
  }
  throw std::invalid_argument("no geometry keys for unknown vendor");
}

}  // namespace rdm
