#pragma once

#include "remote_vm/conditions.hpp"
#include "remote_vm/error.hpp"
#include "remote_vm/experiments.hpp"
#include "remote_vm/extraction.hpp"
#include "remote_vm/generators.hpp"
#include "remote_vm/graph.hpp"
#include "remote_vm/graph_io.hpp"
#include "remote_vm/oracle.hpp"
#include "remote_vm/result_io.hpp"
#include "remote_vm/rng.hpp"
#include "remote_vm/stats.hpp"
