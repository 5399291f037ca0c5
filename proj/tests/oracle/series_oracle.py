from mpmath import mp, mpf, nprod, nsum
mp.dps=60
R=[1,2]
while len(R)<80: R.append(R[-1]+R[-2])
H0=sum(mpf(2)**-r for r in R)
G1=mpf(1)
for r in R: G1*= (1-mpf(2)**-r)
H00=sum(mpf(6)**-r for r in R)
print("H(0)",H0); print("G(1)",G1); print("H(0,0)",H00)
# lambert general s=1 beta=0 m=0 at |z|=1/2: sum 2^-(R_{k+1}+R_k)
print("lam", sum(mpf(2)**-(R[k+1]+R[k]) for k in range(70)))
# G jet at beta=4, a=1/2: coefficient 1 = G'(4)
def G(y):
  p=mpf(1)
  for r in R: p*=(1-mpf(2)**-r*y)
  return p
print("G'(4)", mp.diff(G,4))
# Theta s=2 a=(1/2,1/3) beta=(4,0) m=(1,0)
def Theta(y1,y2):
  t=0
  for k in range(60):
    p1=mpf(2)**-R[k]; p2=mpf(3)**-R[k]
    for kk in range(60):
      if kk!=k: p1*=(1-mpf(2)**-R[kk]*y1); p2*=(1-mpf(3)**-R[kk]*y2)
    t+=p1*p2
  return t
print("Theta(4,0)",Theta(4,0))
print("Theta_10(4,0)",mp.diff(lambda x:Theta(x,0),4))
# Xi^(0,0)(0,0) = Theta^(1,1)(0,0), a=(1/2,1/3)
print("Xi(0,0)", mp.diff(Theta, (0, 0), (1, 1)))
# H_1 second derivative at 1/3 divided by 2!, a=1/2
print("H''(1/3)/2", sum(mpf(2)**(-3*r)/(1-mpf(2)**-r/3)**3 for r in R))
