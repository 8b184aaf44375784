#pragma once

#include "commprobe/errors.hpp"
#include "commprobe/ratio.hpp"
#include "commprobe/permutation.hpp"
#include "commprobe/group.hpp"
#include "commprobe/subgroup.hpp"
#include "commprobe/quotient.hpp"
#include "commprobe/structure.hpp"
#include "commprobe/probability.hpp"
#include "commprobe/words.hpp"
#include "commprobe/report.hpp"
#include "commprobe/neumann.hpp"
#include "commprobe/automorphism.hpp"
#include "commprobe/verifiers.hpp"
#include "commprobe/catalog.hpp"
#include "commprobe/group_file.hpp"
#include "commprobe/report_json.hpp"
#include "commprobe/sweep.hpp"
