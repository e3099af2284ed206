#pragma once

#include "aqp/node.hpp"

namespace aqp {

/// Registers every built-in node type:
///
///   structural   identity, constant, loop, encapsulation, sink
///   dataset      load_dataset, load_signal_pair
///   metric       warpq_vad, mfcc, mel_spectrogram, warpq_sdtw, lsd
///   output       collect_scores, write_csv, correlation_table,
///                scatter_plot
void register_builtin_nodes(NodeRegistry& registry);

}  // namespace aqp
