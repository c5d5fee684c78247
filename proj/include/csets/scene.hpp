#pragma once

#include <string>
#include <vector>

#include "csets/func_ops.hpp"
#include "csets/groundtruth.hpp"

namespace csets {

/// Line-oriented scene file: one shape per line. Blank lines and lines
/// starting with '#' are ignored. Writing then re-parsing is bit-exact.
///   box d=2 min=(-1p0,-1p0) max=(1p0,1p0)
///   ball d=2 c=(0p0,0p0) rad=1p0 norm=linf
///   poly d=2 hs=[(c=(1p0,0p0),a=1p0);(c=(-1p0,0p0),a=0p0)]
///   segment d=2 a=(0p0,0p0) b=(1p0,1p0)
///   point d=2 p=(1p-1,1p-1)
///   union { box d=1 min=(0p0) max=(0p0) ; point d=1 p=(1p0) }
GroundTruthSet parse_shape(std::string_view line);
std::vector<GroundTruthSet> parse_scene(const std::string& text);
std::string write_scene(const std::vector<GroundTruthSet>& shapes);

/// Function spec, one per line:
///   affine d=2 e=2 A=[[2p0,0p0],[0p0,1p0]] v=(1p0,-3p0) smin=0 smax=1 domain={box ...}
///   sqrtmap d=1 lo=1p-2
/// The affine domain is an inline shape; sqrtmap uses [lo, 1].
func_ops::FuncName parse_funcspec(std::string_view line);

}  // namespace csets
