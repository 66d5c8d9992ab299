# Config package for the criticality toolkit
