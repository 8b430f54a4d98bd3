# Fair matching toolkit
