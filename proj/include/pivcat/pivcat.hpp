#ifndef PIVCAT_PIVCAT_HPP
#define PIVCAT_PIVCAT_HPP

#include "pivcat/checks.hpp"
#include "pivcat/cyclotomic.hpp"
#include "pivcat/errors.hpp"
#include "pivcat/fusion_ring.hpp"
#include "pivcat/graded.hpp"
#include "pivcat/group.hpp"
#include "pivcat/io.hpp"
#include "pivcat/matrix.hpp"
#include "pivcat/nimrep.hpp"
#include "pivcat/pointed.hpp"
#include "pivcat/rational.hpp"

#endif
