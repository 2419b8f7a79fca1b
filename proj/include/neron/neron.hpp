#pragma once

#include "neron/errors.hpp"
#include "neron/rational.hpp"
#include "neron/cyclotomic.hpp"
#include "neron/matrix.hpp"
#include "neron/integer_matrix.hpp"
#include "neron/datum.hpp"
#include "neron/limit_mhs.hpp"
#include "neron/disk_lattice.hpp"
#include "neron/neron_chain.hpp"
#include "neron/gallery.hpp"
#include "neron/random_datum.hpp"
#include "neron/poly_module.hpp"
#include "neron/json_io.hpp"
#include "neron/report.hpp"
