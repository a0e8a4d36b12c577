#pragma once

#include <array>
#include <string>
#include <vector>

#include "core/grid.hpp"
#include "core/interface_lab.hpp"
#include "core/partition.hpp"

namespace seglab {

/// CSV matrix, row-major with y increasing per row, header
/// `# nx ny x0 x1 y0 y1`. Values print with %.17g (lossless round-trip).
void write_field_csv(const ScalarField& f, const std::string& path);
ScalarField read_field_csv(const std::string& path);

/// 8-bit binary PGM with linear min-max scaling; the scaling is recorded in
/// a JSON sidecar next to the image (same path plus ".json").
void write_field_pgm(const ScalarField& f, const std::string& path);

/// Region labels as PGM plus a palette sidecar.
void write_labels_pgm(const PartitionMap& pm, const std::string& path);

/// `pair,poly_id,x,y` rows for all three difference contours.
void write_contours_csv(const PartitionMap& pm, const std::string& path);

/// `source,component,x,y` rows.
void write_interfaces_csv(const std::vector<InterfaceSet>& sets,
                          const std::string& path);

void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

/// %.17g formatting used by every emitter (deterministic output).
std::string format_double(double v);

} // namespace seglab
