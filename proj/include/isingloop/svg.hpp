#pragma once

#include <optional>
#include <string>

#include "isingloop/loopgeo.hpp"
#include "isingloop/scan.hpp"

namespace isingloop {

struct LoopAnnotations {
  std::optional<int> winding;  // drawn as "+1", "0", "-2"; "degenerate" if flagged
  bool degenerate = false;
  std::string title;
};

/// Winding label text: "+2", "0", "-1".
std::string winding_label(int winding);

/// Closed path with equal-aspect axes in a fixed 400x400 viewport, origin
/// cross-hair, arrowhead at the first sample pointing along traversal.
/// Throws InvalidArgument for empty samples.
std::string render_loop_svg(const LoopSamples& samples, const LoopAnnotations& notes = {});

/// Heat map of winding numbers; degenerate cells are grey.
std::string render_phase_svg(const PhaseDiagram& diagram);

}  // namespace isingloop
