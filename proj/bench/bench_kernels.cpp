#include "boss/reference.hpp"
int main(){ return 0; }
