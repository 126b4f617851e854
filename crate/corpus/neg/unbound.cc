(* expect: (var) *)
Definition x : Type1 := y.
